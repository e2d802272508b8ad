"""
Gödel numbers for symbols, formulas and derivations
===================================================

Every symbol gets an odd code, a formula becomes a product of prime powers
of its symbol codes, and a derivation becomes a product of prime powers of
its formula codes.  Factoring undoes all of it.
"""

from gaugelogic import SymbolTable, classify, decode, encode_derivation, encode_formula, parse_formula
from gaugelogic.syntax import Derivation, Formula

table = SymbolTable()

# The built-in alphabet and its codes
for entry in list(table)[:6]:
    print(f"{entry.name!r:>5} -> {entry.code}")

# A three-symbol string: 2^5 * 3^17 * 5^1
f = Formula(tokens=("∀", "y", "¬"))
g = encode_formula(f, table)
print("g(∀ y ¬) =", g, "=", 2**5 * 3**17 * 5)

# Not every string is a formula, but every formula code decodes to its string
print("decoded:", decode(g, table).tokens)

# A real formula and its code
p = parse_formula("forall y. !G(x,y)", table)
gp = encode_formula(p, table)
print("g(P(x)) has", len(str(gp)), "digits;", classify(gp, table))

# Derivation codes use formula codes as exponents, so they stay factored
d = Derivation((Formula(tokens=("¬",)), Formula(tokens=("¬", "¬"))))
j = encode_derivation(d, table)
print("g(<[¬], [¬ ¬]>) =", j, "=", int(j))

# Classification of arbitrary numbers
for n in (7, 6, 2916, 10, 90):
    print(n, "->", classify(n, table))
