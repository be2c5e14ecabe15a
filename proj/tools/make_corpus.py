#!/usr/bin/env python3
"""Writes the regression corpus: NAME.yaml job configurations and their
expected series NAME.expected.json.

Expected values come from direct closed forms evaluated with sympy, written
independently of the C++ code. Coefficients are homogeneous in (t, z), so the
series are expanded at z = 1 and the z-power of each monomial is restored
from its degree.
"""

import argparse
import json
import math
from fractions import Fraction
from pathlib import Path

import sympy as sp

SCHEMA_VERSION = 1


def rat(q):
    q = sp.Rational(q)
    return [str(q.p), str(q.q)]


def frac_part(q):
    q = Fraction(q)
    return q - math.floor(q)


def truncate(poly, gens, max_degree):
    terms = {m: c for m, c in poly.terms() if sum(m) <= max_degree}
    return sp.Poly.from_dict(terms, *gens, domain=sp.QQ) if terms else sp.Poly(0, *gens, domain=sp.QQ)


def inverse_linear(w, k, gens, var, max_degree):
    """(w*var + k)^(-1) = (1/k) sum_i (-w var / k)^i up to max_degree."""
    x = sp.Poly(var, *gens, domain=sp.QQ)
    out = sp.Poly(0, *gens, domain=sp.QQ)
    term = sp.Poly(sp.Rational(1) / k, *gens, domain=sp.QQ)
    for _ in range(max_degree + 1):
        out += term
        term = truncate((term * x).mul_ground(sp.Rational(-w) / k), gens, max_degree)
    return out


def element_json(poly, total_degree, nvars):
    """Ring element whose t-monomial m carries c * z^(total_degree - |m|)."""
    out = []
    for m, c in sorted(poly.terms(), key=lambda mc: list(mc[0])):
        if c == 0:
            continue
        zpow = total_degree - sum(m)
        t = list(m[:nvars])
        while t and t[-1] == 0:
            t.pop()
        item = {"t": t}
        if zpow >= 0:
            item["numerator"] = [{"exponents": [zpow] if zpow else [], "coefficient": rat(c)}]
            item["denominator_factors"] = []
        else:
            item["numerator"] = [{"exponents": [], "coefficient": rat(c)}]
            item["denominator_factors"] = [{"form": [rat(1)], "power": -zpow}]
        out.append(item)
    return out


def sector_json(element, fracs):
    order = 1
    for e in element:
        order = math.lcm(order, Fraction(e).denominator)
    return {
        "element": [rat(sp.Rational(e.numerator, e.denominator)) for e in element],
        "fracs": [rat(sp.Rational(f.numerator, f.denominator)) for f in fracs],
        "fixed_support": [i for i, f in enumerate(fracs) if f == 0],
        "order": str(order),
    }


def term_json(beta, lift, theta_degree, sector, value, presentation="restricted", fiber_size=1):
    return {
        "class": [rat(sp.Rational(b.numerator, b.denominator)) for b in beta],
        "lift": [rat(sp.Rational(b.numerator, b.denominator)) for b in lift],
        "theta_degree": rat(sp.Rational(theta_degree.numerator, theta_degree.denominator)),
        "sector": sector,
        "presentation": presentation,
        "fiber_size": fiber_size,
        "coefficients": [{"parameters": [], "value": value}] if value else [],
    }


def document(bound, rank, terms):
    return {
        "schema_version": SCHEMA_VERSION,
        "degree_bound": rat(sp.Rational(bound.numerator, bound.denominator)),
        "torus_rank": rank,
        "equivariant_rank": 0,
        "big_i": None,
        "terms": terms,
        "residues": [],
        "diagnostics": [],
    }


def k_values(b):
    """Shifted integers k with k = b mod 1: (0, b] for b > 0, (b, 0) for b <= 0."""
    if b > 0:
        k = frac_part(b) or Fraction(1)
        out = []
        while k <= b:
            out.append(k)
            k += 1
        return out
    out = []
    k = b + 1
    while k < 0:
        out.append(k)
        k += 1
    return out


def rank_one_series(weights, bound, e_weights=()):
    """Toric (and convex Lefschetz, restricted) series of a rank one quotient
    with positive weights; the sector ring is Q[H]/(H^|F|)."""
    H = sp.Symbol("H")
    gens = (H,)
    degrees = set()
    den = math.lcm(*weights)
    d = Fraction(0)
    while d <= bound:
        if any(frac_part(d * w) == 0 for w in weights):
            degrees.add(d)
        d += Fraction(1, den)
    terms = []
    for d in sorted(degrees):
        element = [frac_part(-d)]
        fracs = [frac_part(-d * w) for w in weights]
        fixed = sum(1 for f in fracs if f == 0)
        top = fixed - 1
        value = sp.Poly(1, *gens, domain=sp.QQ)
        total = 0
        for w in weights:
            for k in k_values(d * w):
                kq = sp.Rational(k.numerator, k.denominator)
                if d * w > 0:
                    value = truncate(value * inverse_linear(w, kq, gens, H, top), gens, top)
                    total -= 1
                else:
                    value = truncate(value * sp.Poly(w * H + kq, *gens, domain=sp.QQ), gens, top)
                    total += 1
        for e in e_weights:
            for k in k_values(d * e):
                kq = sp.Rational(k.numerator, k.denominator)
                value = truncate(value * sp.Poly(e * H + kq, *gens, domain=sp.QQ), gens, top)
                total += 1
        terms.append(term_json([d], [d], d, sector_json(element, fracs), element_json(value, total, 1)))
    return terms


def grassmannian_2_4_series(bound):
    """Abelianized coefficients of G(2,4): over the fiber d1 + d2 = d, d_i >= 0,
    sum (-1)^(d1-d2) (t1 - t2 + (d1-d2) z) prod_k (t1 + kz)^-4 (t2 + kz)^-4,
    divided by t1 - t2 and reduced modulo (t1^4, t2^4)."""
    t1, t2 = sp.symbols("t1 t2")
    gens = (t1, t2)
    top = 7  # one above the top degree 6, consumed by the division
    terms = []
    for d in range(int(bound) + 1):
        numerator = sp.Poly(0, *gens, domain=sp.QQ)
        for d1 in range(d + 1):
            d2 = d - d1
            part = sp.Poly((-1) ** ((d1 - d2) % 2) * (t1 - t2 + (d1 - d2)), *gens, domain=sp.QQ)
            for k in range(1, d1 + 1):
                part = truncate(part * inverse_linear(1, sp.Integer(k), gens, t1, top) ** 4, gens, top)
            for k in range(1, d2 + 1):
                part = truncate(part * inverse_linear(1, sp.Integer(k), gens, t2, top) ** 4, gens, top)
            numerator += part
        if d == 0:
            quotient = sp.Poly(1, *gens, domain=sp.QQ)
        else:
            q, r = sp.div(numerator, sp.Poly(t1 - t2, *gens, domain=sp.QQ))
            assert r.is_zero, "division by t1 - t2 left a remainder"
            quotient = truncate(q, gens, top - 1)
        reduced = {m: c for m, c in quotient.terms() if m[0] < 4 and m[1] < 4}
        value = sp.Poly.from_dict(reduced, *gens, domain=sp.QQ) if reduced else sp.Poly(0, *gens, domain=sp.QQ)
        zero = Fraction(0)
        lift = [Fraction(0), Fraction(d)]
        sector = sector_json([zero, zero], [zero] * 8)
        terms.append(term_json([Fraction(d)], lift, Fraction(d), sector, element_json(value, -4 * d, 2),
                               fiber_size=d + 1))
    return terms


CASES = {
    "projective_space_2": (
        "presentation:\n  preset: projective_space(2)\nrun:\n  mode: toric\n  max_degree: 5\n",
        lambda: document(Fraction(5), 1, rank_one_series([1, 1, 1], Fraction(5))),
    ),
    "projective_space_3": (
        "presentation:\n  preset: projective_space(3)\nrun:\n  mode: toric\n  max_degree: 5\n",
        lambda: document(Fraction(5), 1, rank_one_series([1] * 4, Fraction(5))),
    ),
    "projective_space_4": (
        "presentation:\n  preset: projective_space(4)\nrun:\n  mode: toric\n  max_degree: 5\n",
        lambda: document(Fraction(5), 1, rank_one_series([1] * 5, Fraction(5))),
    ),
    "weighted_projective_1_1_2": (
        "presentation:\n  preset: weighted_projective(1,1,2)\nrun:\n  mode: toric\n  max_degree: 3\n",
        lambda: document(Fraction(3), 1, rank_one_series([1, 1, 2], Fraction(3))),
    ),
    "quintic": (
        "presentation:\n  preset: projective_space(4)\ncomplete_intersection:\n  e_weights: [[5]]\n"
        "run:\n  mode: lefschetz\n  max_degree: 3\n",
        lambda: document(Fraction(3), 1, rank_one_series([1] * 5, Fraction(3), e_weights=[5])),
    ),
    "grassmannian_2_4": (
        "presentation:\n  preset: grassmannian(2,4)\nrun:\n  mode: nonabelian\n  max_degree: 3\n",
        lambda: document(Fraction(3), 2, grassmannian_2_4_series(Fraction(3))),
    ),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", nargs="?", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (config, build) in CASES.items():
        (out / f"{name}.yaml").write_text(config)
        (out / f"{name}.expected.json").write_text(json.dumps(build(), indent=1) + "\n")
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
