#!/usr/bin/env python3
"""Export S-unit seed data for a triple (p, ell0, ell1) using PARI/GP via cypari2.

The output is the versioned SeedData JSON consumed by `kummer_rr certify` and
`kummer_rr run`. Every matrix is computed here by decomposing Galois images in
the S-unit lattice; the Rust side re-certifies all of it independently.

Usage:
    python3 export_seed.py P ELL0 ELL1 OUT.json [--variant SEED] [--certify-class-number] [--characters]
"""

import argparse
import json
import random
import sys
from fractions import Fraction

import cypari2

SCHEMA_VERSION = 1

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)


def smallest_primitive_root(p):
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in prime_factors(p - 1)):
            return g
    raise ValueError("no primitive root")


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def rat_str(q):
    q = pari(q)
    num, den = int(pari.numerator(q)), int(pari.denominator(q))
    return str(num) if den == 1 else "%d/%d" % (num, den)


def rel_coeffs(p, relpoly):
    """Coefficient matrix [a][b] of zeta^a mu^b for a lifted bivariate polynomial."""
    rows = []
    for a in range(p - 1):
        row = []
        for b in range(p):
            cb = pari.polcoef(relpoly, b, "x")
            row.append(rat_str(pari.polcoef(cb, a, "y")))
        rows.append(row)
    return rows


class Exporter:
    def __init__(self, p, l0, l1):
        self.p, self.l0, self.l1 = p, l0, l1
        self.t = smallest_primitive_root(p)
        self.nf = pari("nfinit(polcyclo(%d,y))" % p)
        self.rnf = pari.rnfinit(self.nf, pari("x^%d-%d" % (p, l1)))
        self.big = pari.bnfinit(pari("(r)->r.polabs")(self.rnf), 1)
        self.small = pari.bnfinit(pari("polcyclo(%d,y)" % p), 1)
        self.big_su = pari("(b,l)->bnfsunit(b,idealprimedec(b,l))")(self.big, l0)
        self.small_su = pari("(b,l)->bnfsunit(b,idealprimedec(b,l))")(self.small, l0)

    def class_number(self, certify):
        if certify:
            ok = pari("(b)->bnfcertify(b)")(self.big)
            if int(ok) != 1:
                raise RuntimeError("bnfcertify failed")
        return int(pari("(b)->b.no")(self.big))

    # Basis elements are returned in the order [torsion, units..., S-units...].
    def basis_abs(self, bnf, su):
        tors = pari("(b)->nfbasistoalg(b,b.tu[2])")(bnf)
        units = pari("(b)->b.fu")(bnf)
        sunits = pari("(b,s)->apply(u->Mod(u,b.pol),s[1])")(bnf, su)
        return [tors] + list(units) + list(sunits)

    def decompose(self, bnf, su, x):
        # bnfissunit orders exponents as [units..., torsion, S-units...].
        v = pari("(b,s,x)->bnfissunit(b,s,x)")(bnf, su, x)
        if len(v) == 0:
            raise RuntimeError("element is not an S-unit")
        v = [int(e) for e in v]
        r = len(pari("(b)->b.fu")(bnf))
        return [v[r] % self.p] + [e % self.p for e in v[:r]] + [e % self.p for e in v[r + 1:]]

    def abs_to_rel(self, x):
        rel = pari("(r,x)->lift(lift(rnfeltabstorel(r,x)))")(self.rnf, x)
        return rel

    def rel_to_abs(self, relpoly):
        return pari("(b,r,z)->Mod(lift(rnfeltreltoabs(r,z)),b.pol)")(self.big, self.rnf, relpoly)

    def sigma_rel(self, relpoly):
        return pari("(z,p)->lift(Mod(subst(z,x,y*x),polcyclo(p,y)))")(relpoly, self.p)

    def delta_rel(self, relpoly):
        return pari("(z,p,t)->lift(Mod(subst(z,y,y^t),polcyclo(p,y)))")(relpoly, self.p, self.t)

    def export(self, variant_seed=None, certify_class_number=False, characters=False):
        p = self.p
        big_abs = self.basis_abs(self.big, self.big_su)
        small_abs = self.basis_abs(self.small, self.small_su)
        small_rel = [pari("(z)->lift(z)")(w) for w in small_abs]
        big_rel = [self.abs_to_rel(u) for u in big_abs]

        if variant_seed is not None:
            big_rel, big_abs = self.scramble(big_rel, big_abs, variant_seed)

        if characters:
            sigma, delta, incl = CharacterSolver(self, big_rel, small_rel).matrices()
        else:
            def coords(x):
                raw = self.decompose(self.big, self.big_su, x)
                return self.rebase(raw)

            self.setup_rebase(big_abs)
            sigma = [coords(self.rel_to_abs(self.sigma_rel(z))) for z in big_rel]
            delta = [coords(self.rel_to_abs(self.delta_rel(z))) for z in big_rel]
            incl = [coords(self.rel_to_abs(w)) for w in small_rel]
        h = self.class_number(certify_class_number)
        if h % p == 0:
            raise ClassNumberDivisible(h)
        return {
            "schema_version": SCHEMA_VERSION,
            "params": {"p": p, "ell0": self.l0, "ell1": self.l1},
            "basis_small": [rel_coeffs(p, w) for w in small_rel],
            "basis_big": [rel_coeffs(p, z) for z in big_rel],
            "sigma_matrix": sigma,
            "delta_matrix": delta,
            "inclusion_matrix": incl,
            "class_number_coprimality_flag": True,
        }

    def scramble(self, big_rel, big_abs, seed):
        """Replace the free part of the basis by a random unimodular transform of it."""
        rng = random.Random(seed)
        n = len(big_rel)
        free = list(range(1, n))
        rng.shuffle(free)
        order = [0] + free
        rel = [big_rel[i] for i in order]
        ab = [big_abs[i] for i in order]
        for _ in range(4):
            i, j = rng.sample(range(1, n), 2)
            e = rng.choice([1, -1, 2])
            ab[i] = pari("(b,u,v,e)->Mod(lift(u*v^e),b.pol)")(self.big, ab[i], ab[j], e)
            rel[i] = self.abs_to_rel(ab[i])
        return rel, ab

    def setup_rebase(self, big_abs):
        # Exponent matrix of the chosen basis in PARI's own basis, inverted mod p.
        cols = [self.decompose(self.big, self.big_su, u) for u in big_abs]
        m = pari.matrix(len(cols), len(cols), [cols[j][i] for i in range(len(cols)) for j in range(len(cols))])
        self.rebase_inv = pari("(m,p)->lift(matsolve(Mod(m,p),matid(#m)))")(m, self.p)

    def rebase(self, raw):
        v = pari("(m,v,p)->lift(Mod(m*v~,p))")(self.rebase_inv, raw, self.p)
        return [int(e) for e in v]


def is_prime(n):
    return n > 1 and prime_factors(n) == [n]


def solve_mod(rows, targets, p):
    """Solves x·A = b over F_p for each b in `targets`, where A has the given
    rows; raises if A is not injective or a system is inconsistent."""
    n, k = len(rows), len(rows[0])
    # Augment A^T with every target column and reduce once.
    aug = [[rows[i][c] % p for i in range(n)] + [t[c] % p for t in targets] for c in range(k)]
    piv_cols, r = [], 0
    for col in range(n):
        piv = next((i for i in range(r, k) if aug[i][col]), None)
        if piv is None:
            raise RuntimeError("character matrix has rank below %d" % n)
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], p - 2, p)
        aug[r] = [v * inv % p for v in aug[r]]
        for i in range(k):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    if any(any(row[n:]) for row in aug[n:]):
        raise RuntimeError("an image is not in the span of the basis modulo p-th powers")
    return [[aug[i][n + j] for i in range(n)] for j in range(len(targets))]


class CharacterSolver:
    """Galois and inclusion matrices from p-th power characters at the
    degree-one primes above auxiliary primes q, evaluated at points
    (zeta, mu) -> (r, s) of F_q. Since sigma(u)(r, s) = u(r, r*s) and
    delta(u)(r, s) = u(r^t, s), no Galois image is ever decomposed."""

    START = 20000
    STOP = 400000
    EXTRA = 4

    def __init__(self, ex, big_rel, small_rel):
        self.ex, self.p = ex, ex.p
        self.big = [self.coeffs(z) for z in big_rel]
        self.small = [self.coeffs(w) for w in small_rel]

    def coeffs(self, relpoly):
        return [[Fraction(c) for c in row] for row in rel_coeffs(self.p, relpoly)]

    @staticmethod
    def evaluate(cm, r, s, q):
        acc = 0
        for a, row in enumerate(cm):
            for b, c in enumerate(row):
                if c:
                    if c.denominator % q == 0:
                        return None
                    v = c.numerator % q * pow(c.denominator, q - 2, q) % q
                    acc = (acc + v * pow(r, a, q) * pow(s, b, q)) % q
        return acc

    def chars_at(self, q):
        """Characters of every basis element at every point over q, or None
        if some element is not a unit there."""
        p, ell1 = self.p, self.ex.l1
        g = next(x for x in range(2, q) if all(pow(x, (q - 1) // f, q) != 1 for f in prime_factors(q - 1)))
        h = pow(g, (q - 1) // p, q)
        dlog = {pow(h, i, q): i for i in range(p)}
        r0 = h
        s0 = next(x for x in range(2, q) if pow(x, p, q) == ell1 % q)
        values = {}

        def chi(cm, r, s):
            key = (id(cm), r, s)
            if key not in values:
                v = self.evaluate(cm, r, s, q)
                values[key] = None if not v else dlog[pow(v, (q - 1) // p, q)]
            return values[key]

        points = [(pow(r0, k, q), s0 * pow(r0, j, q) % q) for k in range(1, p) for j in range(p)]
        t = self.ex.t
        out = {"base": [], "sigma": [], "delta": [], "incl": []}
        for r, s in points:
            base = [chi(cm, r, s) for cm in self.big]
            sig = [chi(cm, r, r * s % q) for cm in self.big]
            dl = [chi(cm, pow(r, t, q), s) for cm in self.big]
            inc = [chi(cm, r, s) for cm in self.small]
            if None in base + sig + dl + inc:
                return None
            out["base"].append(base)
            out["sigma"].append(sig)
            out["delta"].append(dl)
            out["incl"].append(inc)
        return out

    def matrices(self):
        p, n = self.p, len(self.big)
        cols = {"base": [], "sigma": [], "delta": [], "incl": []}
        q, rank_primes, extra = self.START - self.START % p + 1, None, 0
        while True:
            q += p
            if q > self.STOP:
                raise RuntimeError("characters below %d do not separate the basis" % self.STOP)
            if not is_prime(q) or q in (self.ex.l0, self.ex.l1) or pow(self.ex.l1, (q - 1) // p, q) != 1:
                continue
            got = self.chars_at(q)
            if got is None:
                continue
            for key in cols:
                cols[key].extend(got[key])
            if rank_primes is None and len(cols["base"]) >= n:
                try:
                    solve_mod(self.transpose(cols["base"]), [], p)
                    rank_primes = True
                except RuntimeError:
                    pass
            elif rank_primes:
                extra += 1
                if extra >= self.EXTRA:
                    break
        basis = self.transpose(cols["base"])
        sigma = solve_mod(basis, self.transpose(cols["sigma"]), p)
        delta = solve_mod(basis, self.transpose(cols["delta"]), p)
        incl = solve_mod(basis, self.transpose(cols["incl"]), p)
        return sigma, delta, incl

    @staticmethod
    def transpose(m):
        return [list(c) for c in zip(*m)]


class ClassNumberDivisible(Exception):
    pass


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("p", type=int)
    ap.add_argument("ell0", type=int)
    ap.add_argument("ell1", type=int)
    ap.add_argument("out")
    ap.add_argument("--variant", type=int, default=None, help="scramble the basis with this RNG seed")
    ap.add_argument("--certify-class-number", action="store_true",
                    help="run bnfcertify (unconditional, slow) instead of trusting GRH")
    ap.add_argument("--characters", action="store_true",
                    help="solve for the matrices from p-th power characters at auxiliary primes "
                         "instead of decomposing every Galois image with bnfissunit")
    args = ap.parse_args()
    try:
        data = Exporter(args.p, args.ell0, args.ell1).export(args.variant, args.certify_class_number, args.characters)
    except ClassNumberDivisible as e:
        print("export aborted: p = %d divides the class number h_K = %s" % (args.p, e), file=sys.stderr)
        sys.exit(3)
    with open(args.out, "w") as f:
        json.dump(data, f, indent=1)
        f.write("\n")
    print("wrote %s (ranks %d and %d)" % (args.out, len(data["basis_small"]) - 1, len(data["basis_big"]) - 1))


if __name__ == "__main__":
    main()
