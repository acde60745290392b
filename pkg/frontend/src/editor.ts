/** Recommendation query editor: paste a ground spec, name it, send it to
 * the evaluator, and get a card back. Parse errors come back with spans
 * and are shown inline against the submitted text.
 */

import { ApiClient, ApiError } from "./api.js";
import type { Diagnostic, ViolationReport } from "./types.js";

export interface EditorCallbacks {
  onReport(report: ViolationReport, source: string): void;
  /** Names already taken by workspace specs or earlier submissions. */
  existingNames(): string[];
}

export class EditorView {
  private readonly api: ApiClient;
  private readonly callbacks: EditorCallbacks;
  readonly nameInput: HTMLInputElement;
  readonly textArea: HTMLTextAreaElement;
  readonly submitButton: HTMLButtonElement;
  private readonly errors: HTMLElement;

  constructor(root: HTMLElement, api: ApiClient, callbacks: EditorCallbacks) {
    this.api = api;
    this.callbacks = callbacks;

    const nameRow = document.createElement("div");
    nameRow.className = "editor-name-row";
    const nameLabel = document.createElement("label");
    nameLabel.textContent = "name";
    this.nameInput = document.createElement("input");
    this.nameInput.type = "text";
    this.nameInput.className = "editor-name";
    this.nameInput.placeholder = "spec name";
    nameLabel.appendChild(this.nameInput);
    nameRow.appendChild(nameLabel);
    root.appendChild(nameRow);

    this.textArea = document.createElement("textarea");
    this.textArea.className = "editor-text";
    this.textArea.placeholder = "mark(bar).\nchannel(e1,x).\n...";
    this.textArea.rows = 8;
    root.appendChild(this.textArea);

    this.submitButton = document.createElement("button");
    this.submitButton.className = "editor-submit";
    this.submitButton.textContent = "evaluate";
    this.submitButton.addEventListener("click", () => {
      void this.submit();
    });
    root.appendChild(this.submitButton);

    this.errors = document.createElement("div");
    this.errors.className = "editor-errors";
    root.appendChild(this.errors);
  }

  async submit(): Promise<boolean> {
    this.errors.replaceChildren();
    const name = this.nameInput.value.trim();
    if (name === "") {
      this.showMessage("a spec needs a name before it can be evaluated");
      return false;
    }
    if (this.callbacks.existingNames().includes(name)) {
      this.showMessage(`a spec named "${name}" already exists; pick another name`);
      return false;
    }
    const source = this.textArea.value;
    try {
      const report = await this.api.evalSpec(name, source);
      this.callbacks.onReport(report, source);
      return true;
    } catch (error) {
      if (error instanceof ApiError) {
        this.showDiagnostics(error, source);
      } else {
        this.showMessage(`evaluation failed: ${String(error)}`);
      }
      return false;
    }
  }

  private showMessage(message: string): void {
    const node = document.createElement("div");
    node.className = "editor-error";
    node.textContent = message;
    this.errors.replaceChildren(node);
  }

  /** Inline parse errors: each diagnostic renders its message with the
   * offending source line and a caret at the reported column. */
  private showDiagnostics(error: ApiError, source: string): void {
    this.errors.replaceChildren();
    const head = document.createElement("div");
    head.className = "editor-error";
    head.textContent = error.message;
    this.errors.appendChild(head);
    const lines = source.split("\n");
    for (const diagnostic of error.diagnostics) {
      this.errors.appendChild(renderDiagnostic(diagnostic, lines));
    }
  }
}

function renderDiagnostic(diagnostic: Diagnostic, lines: string[]): HTMLElement {
  const node = document.createElement("div");
  node.className = "editor-diagnostic";
  node.setAttribute("data-line", String(diagnostic.span.line));
  node.setAttribute("data-col", String(diagnostic.span.col));

  const where = document.createElement("div");
  where.className = "editor-diagnostic-where";
  where.textContent =
    `${diagnostic.span.line}:${diagnostic.span.col}: ` +
    `${diagnostic.severity}: ${diagnostic.message}`;
  node.appendChild(where);

  const line = lines[diagnostic.span.line - 1];
  if (line !== undefined) {
    const snippet = document.createElement("pre");
    snippet.className = "editor-diagnostic-snippet";
    const caret = " ".repeat(Math.max(0, diagnostic.span.col - 1)) + "^";
    snippet.textContent = `${line}\n${caret}`;
    node.appendChild(snippet);
  }
  return node;
}
