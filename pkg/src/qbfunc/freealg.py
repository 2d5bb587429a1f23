"""Free-algebra oracle for the quantized coordinate algebra.

Elements of U_q(n^-) are represented as sparse linear combinations of
words in the letters F_i.  Equality is decided through the Drinfeld
pairing (its radical is the defining ideal), never by Serre rewriting:
an element of weight -mu vanishes iff all twisted derivations r'_i kill
it, which gives an exact recursive zero test.

This module derives, from scratch, the quadratic straightening rules and
the generator action tables that present the subalgebra U_q(n_I^-), and
verifies them before anything downstream consumes them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .scalars import QScalar, QS_ONE, QS_ZERO, q_power, qs, qint


class DerivationError(RuntimeError):
    pass


class InconsistentSystem(DerivationError):
    pass


class RankDeficient(DerivationError):
    pass


class BudgetExceeded(DerivationError):
    """A configured wall-clock budget ran out mid-derivation."""


class NonProportional(DerivationError):
    pass


# -- free element helpers: dict {word tuple: QScalar} --------------------

def f_scale(elem, c):
    if not c:
        return {}
    return {w: cc * c for w, cc in elem.items()}


def f_add_into(acc, elem, c=QS_ONE):
    for w, cc in elem.items():
        v = acc.get(w, QS_ZERO) + cc * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)
    return acc


def f_add(a, b):
    return f_add_into(dict(a), b)


def f_mul(a, b):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            v = out.get(w, QS_ZERO) + c1 * c2
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def word_weight(rs, word):
    mu = [0] * rs.rank
    for l in word:
        mu[l] += 1
    return tuple(mu)


@dataclass
class RelationTable:
    """Derived presentation data for U_q(n_I^-), with provenance."""
    pd: object
    straighten: dict          # (b, a) with b > a -> tuple of (mono, QScalar)
    rprime: dict              # (i, g) -> (QScalar, replacement gen or None)
    adf: dict                 # (i, g) -> (QScalar, replacement gen)
    parent: tuple             # g -> None | (i, parent gen, c constant)
    verification: dict = field(default_factory=dict)

    @property
    def num_generators(self):
        return self.pd.num_generators


class FreeOracle:
    """Computations in the free algebra attached to one parabolic datum."""

    def __init__(self, pd):
        self.pd = pd
        self.rs = pd.rs
        self._Y = {}
        self._parent = {}
        self.comp_index = {b: t for t, b in enumerate(pd.convex_order)}

    # -- twisted derivations -------------------------------------------

    def rprime(self, i, elem):
        rs = self.rs
        di = rs.d[i]
        row = rs.cartan[i]
        out = {}
        for word, c in elem.items():
            suffix_h = 0
            for p in range(len(word) - 1, -1, -1):
                l = word[p]
                if l == i:
                    w2 = word[:p] + word[p + 1:]
                    v = out.get(w2, QS_ZERO) + c * q_power(di * suffix_h)
                    if v:
                        out[w2] = v
                    else:
                        out.pop(w2, None)
                suffix_h += row[l]
        return out

    def r_left(self, i, elem):
        rs = self.rs
        di = rs.d[i]
        row = rs.cartan[i]
        out = {}
        for word, c in elem.items():
            prefix_h = 0
            for p, l in enumerate(word):
                if l == i:
                    w2 = word[:p] + word[p + 1:]
                    v = out.get(w2, QS_ZERO) + c * q_power(di * prefix_h)
                    if v:
                        out[w2] = v
                    else:
                        out.pop(w2, None)
                prefix_h += row[l]
        return out

    def fE(self, i):
        """(F_i, E_i) = -(q_i - q_i^{-1})^{-1}."""
        di = self.rs.d[i]
        return -(q_power(di) - q_power(-di)).inverse()

    def pairing(self, elem, eword):
        """Drinfeld pairing (elem, E_{e_1} ... E_{e_m}), right-peeling."""
        if not elem:
            return QS_ZERO
        if not eword:
            return elem.get((), QS_ZERO)
        anyword = next(iter(elem))
        if word_weight(self.rs, anyword) != word_weight(self.rs, eword):
            return QS_ZERO
        i = eword[-1]
        return self.fE(i) * self.pairing(self.rprime(i, elem), eword[:-1])

    def pairing_left(self, elem, eword):
        """Same pairing via the left-peel formula (cross-check route)."""
        if not elem:
            return QS_ZERO
        if not eword:
            return elem.get((), QS_ZERO)
        i = eword[0]
        return self.fE(i) * self.pairing_left(self.r_left(i, elem), eword[1:])

    # -- exact zero test -----------------------------------------------

    def is_zero(self, elem):
        """Exact zero test in U_q(n^-) by recursive derivation."""
        if not elem:
            return True
        anyword = next(iter(elem))
        if not anyword:
            return not any(elem.values())
        letters = sorted(set(l for w in elem for l in w))
        for i in letters:
            if not self.is_zero(self.rprime(i, elem)):
                return False
        return True

    def is_zero_probabilistic(self, elem, rng, trials):
        if not elem:
            return True
        anyword = next(iter(elem))
        base = sorted(anyword)
        for _ in range(trials):
            w = list(base)
            rng.shuffle(w)
            if self.pairing(elem, tuple(w)):
                return False
        return True

    def find_nonzero_word(self, elem):
        """An E-word pairing nontrivially with elem, or None if elem = 0."""
        if not elem:
            return None
        anyword = next(iter(elem))
        if not anyword:
            return () if any(elem.values()) else None
        for i in sorted(set(l for w in elem for l in w)):
            sub = self.find_nonzero_word(self.rprime(i, elem))
            if sub is not None:
                return sub + (i,)
        return None

    # -- generators Y_beta ---------------------------------------------

    def ad_F(self, i, elem):
        """ad(F_i) on a weight-homogeneous element of weight -mu."""
        anyword = next(iter(elem))
        mu = word_weight(self.rs, anyword)
        tw = q_power(-self.rs.pair(self.rs.simple_root(i), mu))
        fi = {(i,): QS_ONE}
        return f_add_into(f_mul(fi, elem), f_mul(elem, fi), -tw)

    def Y(self, g):
        """Free-algebra support of the generator with convex-order index g."""
        if g in self._Y:
            return self._Y[g]
        pd, rs = self.pd, self.rs
        beta = pd.convex_order[g]
        if beta == rs.simple_root(pd.i0):
            self._Y[g] = {(pd.i0,): QS_ONE}
            self._parent[g] = None
            return self._Y[g]
        for i in range(rs.rank):
            if i == pd.i0:
                continue
            gamma = tuple(b - (1 if j == i else 0) for j, b in enumerate(beta))
            if gamma in self.comp_index:
                break
        else:
            raise DerivationError(f"no descent for generator {beta}")
        gp = self.comp_index[gamma]
        nb = rs.pair(beta, beta)
        ng = rs.pair(gamma, gamma)
        if nb == ng:
            c = QS_ONE
        elif nb == 4 and ng == 2:
            c = (q_power(1) + q_power(-1)).inverse()
        elif nb == 2 and ng == 4:
            c = QS_ONE
        else:
            raise DerivationError(f"unexpected root lengths {nb}, {ng}")
        elem = f_scale(self.ad_F(i, self.Y(gp)), c)
        self._Y[g] = elem
        self._parent[g] = (i, gp, c)
        return elem

    def parent(self, g):
        self.Y(g)
        return self._parent[g]

    # -- straightening derivation --------------------------------------

    def _sample_words(self, mu, rng, seen):
        base = []
        for i, m in enumerate(mu):
            base.extend([i] * m)
        for _ in range(200):
            w = list(base)
            rng.shuffle(w)
            t = tuple(w)
            if t not in seen:
                seen.add(t)
                return t
        return None

    def derive_straightening(self, a, b, rng, verify_level="rank_complete",
                             trials=32, word_budget=4000):
        """Derive the rule Y_b Y_a = sum of ordered monomials, b > a."""
        pd = self.pd
        beta_a, beta_b = pd.convex_order[a], pd.convex_order[b]
        mu = tuple(x + y for x, y in zip(beta_a, beta_b))
        target = f_mul(self.Y(b), self.Y(a))
        cands = []
        for u in range(a, b + 1):
            for v in range(u, b + 1):
                if tuple(x + y for x, y in zip(pd.convex_order[u], pd.convex_order[v])) == mu:
                    cands.append((u, v))
        if mu in self.comp_index:
            cands.append((self.comp_index[mu],))
        cand_elems = [f_mul(self.Y(m[0]), self.Y(m[1])) if len(m) == 2 else self.Y(m[0])
                      for m in cands]

        from .linalg import row_reduce_solve
        rows, rhs = [], []
        seen = set()
        rank = 0
        words_used = 0
        while rank < len(cands):
            w = self._sample_words(mu, rng, seen)
            if w is None or words_used > word_budget:
                raise RankDeficient(
                    f"pair ({a},{b}): rank {rank} < {len(cands)} after "
                    f"{words_used} words")
            words_used += 1
            rows.append([self.pairing(e, w) for e in cand_elems])
            rhs.append(self.pairing(target, w))
            rank = _matrix_rank(rows)
        sol = row_reduce_solve(rows, rhs)
        if sol is None:
            raise InconsistentSystem(f"pair ({a},{b}): no solution")
        residual = dict(target)
        for c, e in zip(sol, cand_elems):
            f_add_into(residual, e, -c)
        if verify_level == "rank_complete":
            ok = self.is_zero(residual)
        else:
            ok = self.is_zero_probabilistic(residual, rng, trials)
        if not ok:
            raise InconsistentSystem(f"pair ({a},{b}): residual nonzero")
        rule = tuple((m, c) for m, c in zip(cands, sol) if c)
        # Levendorskii-Soibelman shape: corrections strictly between a and b
        for m, c in rule:
            if m == (a, b):
                if c.monomial() is None:
                    raise DerivationError(
                        f"pair ({a},{b}): leading coefficient not a monomial")
            elif not all(a < x < b for x in m):
                raise DerivationError(f"pair ({a},{b}): correction {m} outside range")
        return rule

    # -- action tables -------------------------------------------------

    def _scalar_multiple(self, img, target_elem, rng, verify_level, trials):
        """img = s * target in U_q(n^-); find and verify s."""
        w = self.find_nonzero_word(target_elem)
        assert w is not None
        s = self.pairing(img, w) / self.pairing(target_elem, w)
        residual = f_add_into(dict(img), target_elem, -s)
        if verify_level == "rank_complete":
            ok = self.is_zero(residual)
        else:
            ok = self.is_zero_probabilistic(residual, rng, trials)
        if not ok:
            raise NonProportional("image is not proportional to the expected generator")
        return s

    def derive_action_tables(self, rng, verify_level="rank_complete", trials=32):
        pd, rs = self.pd, self.rs
        rp, af = {}, {}
        gen_of_alpha_i0 = self.comp_index[rs.simple_root(pd.i0)]
        for g in range(pd.num_generators):
            beta = pd.convex_order[g]
            yg = self.Y(g)
            for i in range(rs.rank):
                img = self.rprime(i, yg)
                if i == pd.i0:
                    # r'_{i0}(Y_beta) = delta_{alpha_{i0}, beta}
                    if g == gen_of_alpha_i0:
                        if img != {(): QS_ONE}:
                            raise NonProportional("r'_{i0}(F_{i0}) != 1")
                        rp[(i, g)] = (QS_ONE, None)
                    elif not self.is_zero(img):
                        raise NonProportional(f"r'_{{i0}}(Y_{beta}) != 0")
                    continue
                gamma = tuple(b - (1 if j == i else 0) for j, b in enumerate(beta))
                if gamma in self.comp_index:
                    g2 = self.comp_index[gamma]
                    s = self._scalar_multiple(img, self.Y(g2), rng, verify_level, trials)
                    if s:
                        rp[(i, g)] = (s, g2)
                elif not self.is_zero(img):
                    raise NonProportional(f"r'_{i}(Y_{beta}) outside expected line")
                # Lemma: r_i vanishes on the subalgebra for Levi vertices
                if not self.is_zero(self.r_left(i, yg)):
                    raise NonProportional(f"r_{i}(Y_{beta}) != 0 on the subalgebra")
            for i in range(rs.rank):
                if i == pd.i0:
                    continue
                img = self.ad_F(i, yg)
                delta = tuple(b + (1 if j == i else 0) for j, b in enumerate(beta))
                if delta in self.comp_index:
                    g2 = self.comp_index[delta]
                    s = self._scalar_multiple(img, self.Y(g2), rng, verify_level, trials)
                    if s:
                        af[(i, g)] = (s, g2)
                elif not self.is_zero(img):
                    raise NonProportional(f"ad(F_{i})(Y_{beta}) outside expected line")
        return rp, af

    # -- full table ----------------------------------------------------

    def derive_table(self, seed=0, verify_level="rank_complete", trials=32,
                     word_budget=4000, budget_seconds=None):
        pd = self.pd
        k = pd.num_generators
        deadline = None if budget_seconds is None else (
            time.monotonic() + budget_seconds)
        straighten = {}
        for a in range(k):
            for b in range(a + 1, k):
                if deadline is not None and time.monotonic() > deadline:
                    raise BudgetExceeded(
                        f"derivation exceeded {budget_seconds}s at pair ({b},{a})")
                rng = random.Random(f"{seed}:{pd.rs.family}:{pd.rs.rank}:{pd.i0}:{a}:{b}")
                straighten[(b, a)] = self.derive_straightening(
                    a, b, rng, verify_level, trials, word_budget)
        rng = random.Random(f"{seed}:{pd.rs.family}:{pd.rs.rank}:{pd.i0}:actions")
        rp, af = self.derive_action_tables(rng, verify_level, trials)
        parent = tuple(self.parent(g) for g in range(k))
        return RelationTable(
            pd=pd, straighten=straighten, rprime=rp, adf=af, parent=parent,
            verification={"level": verify_level, "seed": seed, "trials": trials})


def _matrix_rank(rows):
    from .linalg import matrix_rank
    return matrix_rank([list(r) for r in rows])
