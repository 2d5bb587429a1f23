"""Ordered PBW monomials, straightening, derivations, adjoint operators
and the bilinear form.

A PBW element is a sparse map from exponent vectors (one entry per
generator, in convex order) to scalars.  Straightening is leftmost
rewriting of descending adjacent pairs using the verified quadratic
rules; products are memoized monomial-by-generator so high powers of the
relative invariant reuse earlier work.
"""

from __future__ import annotations

from .scalars import QScalar, QS_ONE, QS_ZERO, q_power, qint


class MissingRule(KeyError):
    pass


def _merge(acc, terms, c=QS_ONE):
    for e, cc in terms.items():
        v = acc.get(e, QS_ZERO) + cc * c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
    return acc


class PBWElem:
    """Element of the PBW algebra; thin wrapper over {exp: QScalar}."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def __add__(self, other):
        return PBWElem(self.alg, _merge(dict(self.terms), other.terms))

    def __sub__(self, other):
        return PBWElem(self.alg, _merge(dict(self.terms), other.terms, -QS_ONE))

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        return PBWElem(self.alg, self.alg.mul(self.terms, other.terms))

    def scale(self, c):
        return PBWElem(self.alg, {e: cc * c for e, cc in self.terms.items()} if c else {})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, PBWElem) and self.terms == other.terms

    def __repr__(self):
        return f"PBWElem({self.alg.format_elem(self)})"

    def coefficient(self, exp):
        return self.terms.get(exp, QS_ZERO)

    def weight(self):
        """Common weight -mu of all monomials; None for 0."""
        if not self.terms:
            return None
        ws = {self.alg.mono_weight(e) for e in self.terms}
        assert len(ws) == 1, "element is not weight-homogeneous"
        return next(iter(ws))

    def degree(self):
        if not self.terms:
            return None
        degs = {sum(e) for e in self.terms}
        assert len(degs) == 1
        return next(iter(degs))


class PBWAlgebra:
    def __init__(self, table):
        self.table = table
        self.pd = table.pd
        self.rs = self.pd.rs
        self.k = self.pd.num_generators
        self.roots = self.pd.convex_order
        self._zero_exp = (0,) * self.k
        self._unit_cache = {}
        self._mmg_cache = {}
        self._t_gen = {}
        alpha_i0 = self.rs.simple_root(self.pd.i0)
        self.gen_alpha_i0 = self.roots.index(alpha_i0)
        self._mono_weight_cache = {}

    # -- constructors ---------------------------------------------------

    def zero(self):
        return PBWElem(self, {})

    def one(self):
        return PBWElem(self, {self._zero_exp: QS_ONE})

    def gen(self, g):
        e = tuple(1 if j == g else 0 for j in range(self.k))
        return PBWElem(self, {e: QS_ONE})

    def from_terms(self, terms):
        return PBWElem(self, dict(terms))

    # -- structure helpers ---------------------------------------------

    def mono_weight(self, exp):
        w = self._mono_weight_cache.get(exp)
        if w is None:
            acc = [0] * self.rs.rank
            for g, n in enumerate(exp):
                if n:
                    for j, c in enumerate(self.roots[g]):
                        acc[j] += n * c
            w = tuple(acc)
            self._mono_weight_cache[exp] = w
            # degree = alpha_{i0}-coordinate of the weight
            assert sum(exp) == w[self.pd.i0]
        return w

    def mono_word(self, exp):
        out = []
        for g, n in enumerate(exp):
            out.extend([g] * n)
        return tuple(out)

    # -- products -------------------------------------------------------

    def mul_mono_gen(self, exp, g):
        """Normal form of (ordered monomial exp) * Y_g, as a term dict."""
        key = (exp, g)
        out = self._mmg_cache.get(key)
        if out is not None:
            return out
        last = -1
        for j in range(self.k - 1, -1, -1):
            if exp[j]:
                last = j
                break
        if last <= g:
            e2 = list(exp)
            e2[g] += 1
            out = {tuple(e2): QS_ONE}
        else:
            e2 = list(exp)
            e2[last] -= 1
            exp2 = tuple(e2)
            rule = self.table.straighten.get((last, g))
            if rule is None:
                raise MissingRule(f"no straightening rule for ({last}, {g})")
            acc = {}
            for mono, c in rule:
                if len(mono) == 2:
                    u, v = mono
                    part = self.mul_elem_gen(self.mul_mono_gen(exp2, u), v)
                else:
                    part = self.mul_mono_gen(exp2, mono[0])
                _merge(acc, part, c)
            out = acc
        self._mmg_cache[key] = out
        return out

    def mul_elem_gen(self, terms, g):
        out = {}
        for exp, c in terms.items():
            _merge(out, self.mul_mono_gen(exp, g), c)
        return out

    def mul(self, a_terms, b_terms):
        out = {}
        for expb, cb in b_terms.items():
            cur = a_terms
            for letter in self.mono_word(expb):
                cur = self.mul_elem_gen(cur, letter)
            _merge(out, cur, cb)
        return out

    # -- derivations ----------------------------------------------------

    def rprime(self, i, x):
        """Twisted derivation r'_i extended over PBW monomials."""
        rs = self.rs
        di = rs.d[i]
        row = rs.cartan[i]
        acts = self.table.rprime
        out = {}
        for exp, c in x.terms.items():
            word = self.mono_word(exp)
            suffix_h = 0
            for p in range(len(word) - 1, -1, -1):
                l = word[p]
                act = acts.get((i, l))
                if act is not None:
                    s, g2 = act
                    prefix = [0] * self.k
                    for t in range(p):
                        prefix[word[t]] += 1
                    cur = {tuple(prefix): c * s * q_power(di * suffix_h)}
                    if g2 is not None:
                        cur = self.mul_elem_gen(cur, g2)
                    for t in range(p + 1, len(word)):
                        cur = self.mul_elem_gen(cur, word[t])
                    _merge(out, cur)
                beta = self.roots[l]
                suffix_h += sum(row[j] * bj for j, bj in enumerate(beta))
        return PBWElem(self, out)

    def ad_E(self, i, x):
        """ad(E_i) = -(q_i - q_i^{-1})^{-1} r'_i on the subalgebra (Levi i)."""
        di = self.rs.d[i]
        return self.rprime(i, x).scale(-(q_power(di) - q_power(-di)).inverse())

    def ad_F(self, i, x):
        rs = self.rs
        alpha = rs.simple_root(i)
        acts = self.table.adf
        out = {}
        for exp, c in x.terms.items():
            word = self.mono_word(exp)
            prefix_pair = 0
            for p, l in enumerate(word):
                act = acts.get((i, l))
                if act is not None:
                    s, g2 = act
                    prefix = [0] * self.k
                    for t in range(p):
                        prefix[word[t]] += 1
                    cur = {tuple(prefix): c * s * q_power(-prefix_pair)}
                    cur = self.mul_elem_gen(cur, g2)
                    for t in range(p + 1, len(word)):
                        cur = self.mul_elem_gen(cur, word[t])
                    _merge(out, cur)
                prefix_pair += rs.pair(alpha, self.roots[l])
        return PBWElem(self, out)

    def ad_K_scalar(self, mu, x):
        """Eigenvalue of ad(K_mu) on a weight vector: q^{-(mu, wt)}."""
        w = x.weight()
        return q_power(-self.rs.pair(mu, w))

    # -- adjoint operators of multiplication ----------------------------

    def t_gen(self, g):
        """The operator adjoint to left multiplication by Y_g."""
        op = self._t_gen.get(g)
        if op is not None:
            return op
        parent = self.table.parent[g]
        if parent is None:
            c0 = qint(self.pd.d_i0, 1).inverse()
            i0 = self.pd.i0

            def op(x, _c0=c0, _i0=i0):
                return self.rprime(_i0, x).scale(_c0)
        else:
            i, gp, c = parent
            tp = self.t_gen(gp)
            di = self.rs.d[i]
            betap = self.roots[gp]
            tw = q_power(-di * self.rs.weight_h(betap, i))

            def op(x, _i=i, _tp=tp, _c=c, _tw=tw):
                a = _tp(self.ad_E(_i, x))
                b = self.ad_E(_i, _tp(x))
                return (a - b.scale(_tw)).scale(_c)
        self._t_gen[g] = op
        return op

    def t_op_elem(self, gelem):
        """Adjoint operator of a PBW element; anti-multiplicative in factors."""
        plan = [(self.mono_word(exp), c) for exp, c in sorted(gelem.terms.items())]

        def op(x):
            total = self.zero()
            for word, c in plan:
                cur = x
                for g in word:  # ascending letters: t(last factor) acts last
                    cur = self.t_gen(g)(cur)
                    if not cur:
                        break
                total = total + cur.scale(c)
            return total
        return op

    def bilinear(self, f, g):
        """<f, g>: degree-0 coefficient of the adjoint of g applied to f."""
        return self.t_op_elem(g)(f).coefficient(self._zero_exp)

    # -- weight spaces and highest weight vectors ------------------------

    def weight_space_basis(self, mu, m):
        """Exponent vectors of degree m and weight mu (mu = sum of roots)."""
        out = []

        # acc holds one entry per generator
        def rec2(g, rem, deg, acc):
            if g == self.k:
                if deg == 0 and all(c == 0 for c in rem):
                    out.append(tuple(acc))
                return
            beta = self.roots[g]
            cur = list(rem)
            n = 0
            while n <= deg and all(c >= 0 for c in cur):
                rec2(g + 1, tuple(cur), deg - n, acc + [n])
                for j, bj in enumerate(beta):
                    cur[j] -= bj
                n += 1

        rec2(0, tuple(mu), m, [])
        return sorted(out)

    def hwv_solve(self, mu, m):
        """Basis of the joint kernel of ad(E_i), i in Levi, in weight/degree."""
        from .linalg import kernel_basis
        basis = self.weight_space_basis(mu, m)
        if not basis:
            return []
        col_index = {e: j for j, e in enumerate(basis)}
        rows = []
        for i in self.pd.levi:
            images = [self.rprime(i, PBWElem(self, {e: QS_ONE})) for e in basis]
            out_exps = sorted({e for img in images for e in img.terms})
            for oe in out_exps:
                rows.append([img.terms.get(oe, QS_ZERO) for img in images])
        if not rows:
            vecs = [[QS_ONE if j == jj else QS_ZERO for jj in range(len(basis))]
                    for j in range(len(basis))]
        else:
            vecs = kernel_basis(rows, len(basis))
        out = []
        for v in vecs:
            terms = {e: c for e, c in zip(basis, v) if c}
            out.append(PBWElem(self, terms))
        return out

    # -- table certification --------------------------------------------

    def confluence_check(self):
        """Straighten every descending triple both ways; report mismatches."""
        bad = []
        for a in range(self.k):
            for m in range(a + 1, self.k):
                for b in range(m + 1, self.k):
                    x1 = (self.gen(b) * self.gen(m)) * self.gen(a)
                    x2 = self.gen(b) * (self.gen(m) * self.gen(a))
                    if x1 != x2:
                        bad.append((b, m, a))
        return bad

    def hilbert_check(self, maxdeg):
        """Certify that straightened products are triangular in the PBW basis."""
        from math import comb
        report = []
        for m in range(1, maxdeg + 1):
            exps = self._all_exps(m)
            expected = comb(self.k + m - 1, m)
            ok = len(exps) == expected
            tri_ok = True
            for exp in exps:
                word = self.mono_word(exp)[::-1]
                cur = {self._zero_exp: QS_ONE}
                for letter in word:
                    cur = self.mul_elem_gen(cur, letter)
                if exp not in cur or not cur[exp]:
                    tri_ok = False
                self.mono_weight(exp)  # asserts degree == i0-coordinate
            report.append({"degree": m, "count": len(exps), "expected": expected,
                           "count_ok": ok, "triangular_ok": tri_ok})
        return report

    def _all_exps(self, m):
        out = []

        def rec(g, deg, acc):
            if g == self.k - 1:
                out.append(tuple(acc + [deg]))
                return
            for n in range(deg + 1):
                rec(g + 1, deg - n, acc + [n])
        rec(0, m, [])
        return out

    # -- misc -----------------------------------------------------------

    def format_elem(self, x):
        from .scalars import serialize
        if not x.terms:
            return "0"
        parts = []
        for e in sorted(x.terms):
            mono = "*".join(f"Y{g}^{n}" if n > 1 else f"Y{g}"
                            for g, n in enumerate(e) if n) or "1"
            parts.append(f"({serialize(x.terms[e])})*{mono}")
        return " + ".join(parts)
