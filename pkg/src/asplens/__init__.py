"""asplens: static analysis and radial hypergraph visualization for ASP
rule bases.

Pipeline: parse a rule base into a typed AST, extract hard/soft
constraints with weights and their identifier hierarchy, extract shared
syntax features, build the bipartite constraint/feature hypergraph, lay
it out radially, and score candidate specs (ground fact sets) against
the constraints.
"""

__version__ = "0.1.0"
