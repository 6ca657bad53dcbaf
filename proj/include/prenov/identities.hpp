#pragma once

// Named identity systems used across the library, written in the term
// grammar. lprod is ⊢ and rprod is ⊣.

#include "sexpr.hpp"

#include <string>
#include <vector>

namespace prenov::identities {

inline TermPoly associativity()
{
    return parse_term("(- (mul (mul x1 x2) x3) (mul x1 (mul x2 x3)))", OpSignature::multiplication());
}

inline TermPoly commutativity() { return parse_term("(- (mul x1 x2) (mul x2 x1))", OpSignature::multiplication()); }

/// (xy)z - x(yz) - (yx)z + y(xz)
inline TermPoly left_symmetry()
{
    return parse_term("(+ (mul (mul x1 x2) x3) (- (mul x1 (mul x2 x3))) (- (mul (mul x2 x1) x3)) (mul x2 (mul x1 x3)))",
                      OpSignature::multiplication());
}

/// (xy)z - (xz)y
inline TermPoly right_commutativity()
{
    return parse_term("(- (mul (mul x1 x2) x3) (mul (mul x1 x3) x2))", OpSignature::multiplication());
}

/// (x1·x2)·x3 - x1·(x2·x3 + x3·x2)
inline TermPoly zinbiel()
{
    return parse_term("(- (mul (mul x1 x2) x3) (mul x1 (mul x2 x3)) (mul x1 (mul x3 x2)))",
                      OpSignature::multiplication());
}

/// The four defining identities of pre-Novikov algebras in ≺/≻ form; they
/// hold for a≺b = a·d(b), a≻b = d(a)·b on differential Zinbiel algebras.
inline std::vector<TermPoly> pre_novikov()
{
    return parse_identities(R"(
        (= (prec (prec x1 x2) x3) (prec (prec x1 x3) x2))
        (= (succ x1 (succ x2 x3)) (- (prec (succ x1 x3) x2) (succ x1 (prec x3 x2))))
        (= (succ (succ x1 x2) x3)
           (+ (succ (succ x1 x3) x2) (prec (succ x1 x3) x2) (- (prec (succ x1 x2) x3))))
        (= (succ (prec x1 x2) x3)
           (+ (prec x1 (succ x2 x3)) (prec x1 (prec x3 x2)) (prec (succ x1 x3) x2) (- (prec (prec x1 x3) x2))))
    )",
                            OpSignature::derived());
}

/// The same system in ⊢/⊣ form.
inline std::vector<TermPoly> pre_novikov_dendriform()
{
    return parse_identities(R"(
        (= (rprod (rprod x1 x2) x3) (rprod (rprod x1 x3) x2))
        (= (rprod (lprod x1 x2) x3) (+ (lprod (lprod x1 x3) x2) (lprod (rprod x1 x3) x2)))
        (= (- (rprod (rprod x1 x2) x3) (rprod x1 (rprod x2 x3)) (rprod x1 (lprod x2 x3)))
           (- (rprod (lprod x2 x1) x3) (lprod x2 (rprod x1 x3))))
        (= (- (rprod (lprod x1 x3) x2) (lprod x1 (lprod x2 x3)))
           (- (rprod (lprod x2 x3) x1) (lprod x2 (lprod x1 x3))))
    )",
                            OpSignature::dendriform());
}

/// Dendriform (pre-associative) identities, one per marked variable.
inline std::vector<TermPoly> dendriform_associativity()
{
    return parse_identities(R"(
        (- (rprod (rprod x1 x2) x3) (rprod x1 (+ (rprod x2 x3) (lprod x2 x3))))
        (- (rprod (lprod x1 x2) x3) (lprod x1 (rprod x2 x3)))
        (- (lprod (+ (lprod x1 x2) (rprod x1 x2)) x3) (lprod x1 (lprod x2 x3)))
    )",
                            OpSignature::dendriform());
}

} // namespace prenov::identities
