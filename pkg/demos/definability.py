"""
Is "being massive" definable?
=============================

Two schemas relate the mass predicate M to derivations.  In the
gauge-symmetric setting no derivation leads to a massive Lagrangian, and
the model of M is forced to be empty.  After symmetry breaking the checked
Higgs chain itself is a member of M's model.
"""

from gaugelogic import (
    SymbolTable,
    check_massiveness_definable,
    check_massiveness_indefinable,
    check_nonequivalence,
    encode_formula,
    goedel_sentence_demo,
    tarski_sentence_demo,
    verify_higgs_chain,
)
from gaugelogic.higgs import massless_lagrangian_formula

table = SymbolTable()

# Without symmetry breaking: the null-model argument
i = encode_formula(massless_lagrangian_formula(table), table)
print(check_massiveness_indefinable(i, 4, 6, table=table))

# With symmetry breaking: the derivation code is a witness
report = check_massiveness_definable(verify_higgs_chain(table), table)
print(report)

# The two schemas are not equivalent; one element is enough to see it
print(check_nonequivalence(table))

# Self-reference at toy scale
print(goedel_sentence_demo(table))
print(tarski_sentence_demo(table).verdict.value)
