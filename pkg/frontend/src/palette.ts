/** Categorical highlight palette for selected recommendations.
 *
 * Every entry keeps a hue well away from the diverging weight colormap
 * (blue #2166ac through white to red #b2182b) and from the hard-constraint
 * gray, so a selection stripe can never be mistaken for a weight color.
 */

export const PALETTE: readonly string[] = [
  "#e69f00",
  "#009e73",
  "#7b3294",
  "#66a61e",
  "#a6611a",
  "#01665e",
  "#ccbb44",
  "#1b7837",
];

/** One dash/gap pattern per palette slot; overlapping stripes on the same
 * node stay tellable apart even for viewers who can't separate the hues. */
export const DASH_PATTERNS: readonly string[] = [
  "4 2",
  "8 3",
  "2 2",
  "10 4",
  "6 6",
  "3 5",
  "12 2",
  "5 3",
];

export const MAX_SELECTIONS = PALETTE.length;

/** Lowest palette slot not currently in use, or null when all are taken.
 * Reusing freed slots keeps color assignment stable under reordering:
 * the n-th live selection always wears the lowest color it could claim. */
export function firstFreeSlot(used: Iterable<number>): number | null {
  const taken = new Set(used);
  for (let slot = 0; slot < PALETTE.length; slot += 1) {
    if (!taken.has(slot)) {
      return slot;
    }
  }
  return null;
}

export function colorForSlot(slot: number): string {
  const color = PALETTE[slot];
  if (color === undefined) {
    throw new Error(`palette slot ${slot} out of range`);
  }
  return color;
}

export function dashForSlot(slot: number): string {
  const dash = DASH_PATTERNS[slot];
  if (dash === undefined) {
    throw new Error(`palette slot ${slot} out of range`);
  }
  return dash;
}
