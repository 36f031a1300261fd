"""Named verification checks, the machine-facing twin of the test suite.

Each check is registered with a stable id, the suite it belongs to, and an
anchor string quoting the identity or table it verifies.  Checks are pure
functions of (rng, samples, tol) returning (passed, residual); the CLI runs
them and serializes the outcomes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import classification as cls
from . import curvature as curv
from . import dynamics as dyn
from . import flag_space as fs
from . import lie_core as lc
from . import models as md

__all__ = ["REGISTRY", "run_checks", "suites", "CheckOutcome"]


@dataclass(frozen=True)
class CheckOutcome:
    check_id: str
    suite: str
    anchor: str
    passed: bool
    residual: float | None


_REGISTRY = []


def check(check_id: str, suite: str, anchor: str):
    def wrap(fn):
        _REGISTRY.append((check_id, suite, anchor, fn))
        return fn
    return wrap


def suites():
    return sorted({suite for _, suite, _, _ in _REGISTRY})


def run_checks(suite=None, seed: int = 0, samples: int | None = None,
               tol: float = 1e-9):
    """Run registered checks (optionally one suite), deterministically in
    the seed.  Returns CheckOutcome records sorted by id."""
    known = suites()
    if suite is not None and suite not in known:
        raise KeyError(f"unknown suite {suite!r}; known: {', '.join(known)}")
    outcomes = []
    for check_id, suite_name, anchor, fn in sorted(_REGISTRY):
        if suite is not None and suite_name != suite:
            continue
        rng = random.Random(f"{seed}:{check_id}")
        try:
            passed, residual = fn(rng, samples, tol)
        except Exception:
            passed, residual = False, None
        outcomes.append(CheckOutcome(check_id, suite_name, anchor, bool(passed),
                                     None if residual is None else float(residual)))
    return outcomes


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------

def rand_frac(rng, lo=-9, hi=9, den=9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_lievec(rng) -> lc.LieVec:
    return lc.LieVec.of([[rand_frac(rng) for _ in range(3)] for _ in range(3)])


def rand_traceless(rng) -> lc.LieVec:
    v = rand_lievec(rng)
    t = v.trace()
    return v - lc.LieVec.diag(t / 3, t / 3, t / 3)


def rand_group(rng) -> lc.GroupElem:
    while True:
        try:
            return lc.GroupElem([[rand_frac(rng) for _ in range(3)] for _ in range(3)])
        except ValueError:
            continue


def rand_upper(rng) -> lc.GroupElem:
    def nz():
        while True:
            f = rand_frac(rng)
            if f != 0:
                return f
    return lc.GroupElem([[nz(), rand_frac(rng), rand_frac(rng)],
                         [0, nz(), rand_frac(rng)],
                         [0, 0, nz()]])


def rand_flag(rng) -> fs.Flag:
    while True:
        try:
            m = [rand_frac(rng) for _ in range(3)]
            q = [rand_frac(rng) for _ in range(3)]
            return fs.Flag.of(m, q)
        except ValueError:
            continue


def rand_interior_flag(rng, model: str) -> fs.Flag:
    while True:
        x, y, z = (rand_frac(rng) for _ in range(3))
        if model == "t" and x - y * z == 0:
            continue
        if model == "t" and x == 0 and y == 0:
            continue
        flag = fs.flag_from_coords(x, y, z)
        if fs.region_classify(flag, model) is fs.Region.INTERIOR:
            return flag


def rand_sl2(rng):
    while True:
        a, b, c = (rand_frac(rng) for _ in range(3))
        if a != 0:
            return ((a, b), (c, (1 + b * c) / a))


def rand_heis(rng) -> md.HeisElem:
    return md.HeisElem.of(rand_frac(rng), rand_frac(rng), rand_frac(rng))


def rand_auto(rng) -> md.HeisAuto:
    def nz():
        while True:
            f = rand_frac(rng)
            if f != 0:
                return f
    return md.HeisAuto.of(nz(), nz())


def _n(samples, default):
    return default if samples is None else samples


# ---------------------------------------------------------------------------
# lie-core suite
# ---------------------------------------------------------------------------

@check("bracket-heis-generators", "lie-core", "[X, Y] = Z")
def _check_heis_bracket(rng, samples, tol):
    return lc.bracket(md.HEIS_X, md.HEIS_Y) == md.HEIS_Z, None


@check("bracket-sl2-generators", "lie-core", "[E, F] = H")
def _check_sl2_bracket(rng, samples, tol):
    return lc.bracket(md.SL2_E, md.SL2_F) == md.SL2_H, None


@check("bracket-antisymmetry-jacobi", "lie-core",
       "[u,v] = -[v,u] and Jacobi, exact on random rational triples")
def _check_antisym_jacobi(rng, samples, tol):
    n = _n(samples, 200)
    for _ in range(n):
        u, v, w = (rand_lievec(rng) for _ in range(3))
        if lc.bracket(u, v) != -lc.bracket(v, u):
            return False, None
        jac = (lc.bracket(u, lc.bracket(v, w)) + lc.bracket(v, lc.bracket(w, u))
               + lc.bracket(w, lc.bracket(u, v)))
        if not jac.is_zero():
            return False, None
    return True, None


@check("grading-pure-components", "lie-core",
       "corner generator is pure grade -2; traceless diagonal is pure grade 0")
def _check_grading_pure(rng, samples, tol):
    d = lc.grade_decompose(lc.E_0)
    ok = d[-2] == lc.E_0 and all(d[k].is_zero() for k in d if k != -2)
    d2 = lc.grade_decompose(lc.LieVec.diag(1, -1, 0))
    ok = ok and all(d2[k].is_zero() for k in d2 if k != 0)
    return ok, None


@check("grading-bracket-additivity", "lie-core",
       "bracket of grade-i and grade-j parts is pure grade i+j, all basis pairs")
def _check_grading_additivity(rng, samples, tol):
    for u in lc.BASIS:
        for v in lc.BASIS:
            gu = next(k for k, p in lc.grade_decompose(u).items() if not p.is_zero())
            gv = next(k for k, p in lc.grade_decompose(v).items() if not p.is_zero())
            br = lc.bracket(u, v)
            if br.is_zero():
                continue
            parts = lc.grade_decompose(br)
            if any(not parts[k].is_zero() for k in parts if k != gu + gv):
                return False, None
    return True, None


@check("filtration-property", "lie-core",
       "[filtration^i, filtration^j] inside filtration^{i+j}, all basis pairs")
def _check_filtration(rng, samples, tol):
    def filt_level(v):
        parts = lc.grade_decompose(v)
        return min((k for k in parts if not parts[k].is_zero()), default=3)

    for u in lc.BASIS:
        for v in lc.BASIS:
            br = lc.bracket(u, v)
            if not br.is_zero() and filt_level(br) < filt_level(u) + filt_level(v):
                return False, None
    return True, None


@check("quotient-adjoint-display", "lie-core",
       "induced adjoint matrix [[a b^2, 0, -b^2 x], [0, a^-2 b^-1, a^-1 y], [0, 0, a^-1 b]]")
def _check_qadj_display(rng, samples, tol):
    n = _n(samples, 1000)
    for _ in range(n):
        p = rand_upper(rng)
        e = p.entries
        d1, d2, d3 = e[0][0], e[1][1], e[2][2]
        expected = ((d3 / d2, Fraction(0), -(d3 * e[0][1]) / (d1 * d2)),
                    (Fraction(0), d2 / d1, e[1][2] / d1),
                    (Fraction(0), Fraction(0), d3 / d1))
        if lc.quotient_adjoint(p) != expected:
            return False, None
    return True, None


@check("quotient-adjoint-bruteforce", "lie-core",
       "closed form equals generic conjugate-and-project computation")
def _check_qadj_brute(rng, samples, tol):
    n = _n(samples, 1000)
    for _ in range(n):
        p = rand_upper(rng)
        if lc.quotient_adjoint(p) != lc.quotient_adjoint_bruteforce(p):
            return False, None
    return True, None


@check("quotient-adjoint-morphism", "lie-core",
       "induced adjoint of a product is the product of induced adjoints")
def _check_qadj_morphism(rng, samples, tol):
    from .rational import mat_mul

    n = _n(samples, 200)
    for _ in range(n):
        p, q = rand_upper(rng), rand_upper(rng)
        if lc.quotient_adjoint(p @ q) != mat_mul(lc.quotient_adjoint(p),
                                                 lc.quotient_adjoint(q)):
            return False, None
    return True, None


@check("centralizer-block-sl2", "lie-core", "Cent(block sl2) = span{diag(1,1,-2)}")
def _check_centralizer_s0(rng, samples, tol):
    cent = lc.centralizer(cls.s_0())
    return cent.dim == 1 and cent.contains(cls.CENTRAL_LINE), None


@check("centralizer-so3-so12", "lie-core", "Cent(so3) = Cent(so(1,2)) = 0")
def _check_centralizer_so(rng, samples, tol):
    return lc.centralizer(cls.so3()).dim == 0 and lc.centralizer(cls.so12()).dim == 0, None


@check("centralizer-full", "lie-core", "center of the simple algebra is 0")
def _check_centralizer_full(rng, samples, tol):
    full = lc.Subalgebra.of(list(lc.BASIS))
    return lc.centralizer(full).dim == 0, None


@check("subalgebra-recognizer", "lie-core",
       "closure accepts the classified list, rejects a corrupted basis")
def _check_subalgebra_recognizer(rng, samples, tol):
    good = [cls.h_t(), cls.h_a(), cls.h_1(), cls.h_2(), cls.s_0(),
            cls.heis_algebra(), cls.so3()]
    if not all(a.is_subalgebra() for a in good):
        return False, None
    corrupted = list(cls.h_1().basis)
    rows = [list(map(list, corrupted[2].entries))]
    rows[0][2][0] = Fraction(1)  # perturb one entry
    corrupted[2] = lc.LieVec.of(rows[0])
    return not lc.Subalgebra.of(corrupted).is_subalgebra(), None


@check("exp-ad-consistency", "lie-core",
       "conjugation by exp(v) equals exp of the bracket action, relative "
       "defect <= 1e-9 for norms up to 10")
def _check_exp_ad(rng, samples, tol):
    n = _n(samples, 20)
    worst = 0.0
    for _ in range(n):
        v = rand_traceless(rng)
        norm = float(np.linalg.norm(v.to_float(), ord=np.inf))
        if norm > 10:
            v = v.scale(Fraction(9, int(math.ceil(norm))))
        lhs = lc.Ad_of_exp(v)
        rhs = lc.exp_ad(v)
        defect = float(np.linalg.norm(lhs - rhs) / max(1.0, np.linalg.norm(rhs)))
        worst = max(worst, defect)
        if defect > 1e-9:
            return False, defect
    return True, worst


@check("theta-morphisms", "lie-core",
       "g -> (g^T)^{-1} is a group morphism; v -> -v^T preserves brackets")
def _check_theta(rng, samples, tol):
    n = _n(samples, 100)
    for _ in range(n):
        g, h = rand_group(rng), rand_group(rng)
        if lc.theta_group(g @ h) != lc.theta_group(g) @ lc.theta_group(h):
            return False, None
        u, v = rand_lievec(rng), rand_lievec(rng)
        lhs = lc.theta_involution(lc.bracket(u, v))
        rhs = lc.bracket(lc.theta_involution(u), lc.theta_involution(v))
        if lhs != rhs:
            return False, None
    return True, None


@check("theta-fixes-block-model-algebra", "lie-core",
       "the involution maps the block subalgebra onto itself")
def _check_theta_ht(rng, samples, tol):
    ht = cls.h_t()
    return ht.map(lc.theta_involution).span_equals(ht), None


# ---------------------------------------------------------------------------
# flag-space suite
# ---------------------------------------------------------------------------

@check("act-preserves-incidence", "flag-space",
       "the diagonal action preserves point-line incidence, exact")
def _check_act_incidence(rng, samples, tol):
    n = _n(samples, 2000)
    for _ in range(n):
        g, x = rand_group(rng), rand_flag(rng)
        fs.act(g, x)  # constructor re-checks incidence
    return True, None


@check("act-composition", "flag-space", "act(gh, x) = act(g, act(h, x))")
def _check_act_composition(rng, samples, tol):
    n = _n(samples, 300)
    for _ in range(n):
        g, h, x = rand_group(rng), rand_group(rng), rand_flag(rng)
        if fs.act(g @ h, x) != fs.act(g, fs.act(h, x)):
            return False, None
    return True, None


@check("base-flag-stabilizer", "flag-space",
       "upper-triangular elements fix the base flag")
def _check_stabilizer(rng, samples, tol):
    n = _n(samples, 200)
    for _ in range(n):
        if fs.act(rand_upper(rng), fs.BASE_FLAG) != fs.BASE_FLAG:
            return False, None
    return True, None


@check("flip-involution-and-value", "flag-space",
       "flip is an involution; flip of the base flag is the opposite flag")
def _check_flip(rng, samples, tol):
    if fs.flip(fs.BASE_FLAG) != fs.Flag.of((0, 0, 1), (0, 1, 0)):
        return False, None
    n = _n(samples, 100)
    for _ in range(n):
        x = rand_flag(rng)
        if fs.flip(fs.flip(x)) != x:
            return False, None
    return True, None


@check("flip-equivariance", "flag-space",
       "flip(g x) = (g^T)^{-1} flip(x)")
def _check_flip_equivariance(rng, samples, tol):
    n = _n(samples, 200)
    for _ in range(n):
        g, x = rand_group(rng), rand_flag(rng)
        if fs.flip(fs.act(g, x)) != fs.act(lc.theta_group(g), fs.flip(x)):
            return False, None
    return True, None


@check("flip-exchanges-circles", "flag-space",
       "flip maps the line-pencil circle onto the point-row circle")
def _check_flip_circles(rng, samples, tol):
    n = _n(samples, 50)
    for _ in range(n):
        x = rand_flag(rng)
        for (s, t) in ((1, 0), (0, 1), (1, 1), (2, 3), (-1, 5)):
            y = fs.flip(fs.alpha_circle_flag(x, s, t))
            if y.line != fs.flip(x).line:
                return False, None  # must stay on the beta circle of flip(x)
    return True, None


@check("affine-chart-roundtrip", "flag-space",
       "pointed affine line chart round-trips exactly; base values match")
def _check_chart(rng, samples, tol):
    if fs.affine_chart(fs.O_A) != ((0, 0), (0, 1)):
        return False, None
    if fs.affine_chart(fs.O_T) != ((1, 0), (0, 1)):
        return False, None
    n = _n(samples, 200)
    for _ in range(n):
        x = rand_interior_flag(rng, "a")
        point, direction = fs.affine_chart(x)
        if fs.affine_chart_inverse(point, direction) != x:
            return False, None
    return True, None


@check("chart-boundary-error", "flag-space",
       "flags pointed at infinity are rejected by the chart")
def _check_chart_error(rng, samples, tol):
    try:
        fs.affine_chart(fs.Flag.of((0, 1, 0), (1, 0, 0)))
    except fs.BoundaryError:
        return True, None
    return False, None


@check("region-examples", "flag-space",
       "anchors: the two model base flags are interior; the degeneration "
       "anchor flags land in their strata; the base flag is deep boundary")
def _check_region_examples(rng, samples, tol):
    ok = fs.region_classify(fs.O_T, "t") is fs.Region.INTERIOR
    ok = ok and fs.region_classify(fs.O_A, "a") is fs.Region.INTERIOR
    g2 = fs.Flag.of((0, 1, 0), (1, 0, 1))
    ok = ok and fs.region_classify(g2, "t") is fs.Region.G2
    ok = ok and fs.region_classify(fs.BASE_FLAG, "a") is fs.Region.DEEP_BOUNDARY
    return ok, None


@check("region-orbit-rank", "flag-space",
       "the model algebra orbit is 3-dimensional exactly on the interior")
def _check_region_rank(rng, samples, tol):
    n = _n(samples, 150)
    for model, alg in (("t", cls.h_t()), ("a", cls.h_a())):
        for _ in range(n):
            x = rand_flag(rng)
            interior = fs.region_classify(x, model) is fs.Region.INTERIOR
            if (fs.orbit_rank(alg.basis, x) == 3) != interior:
                return False, None
    return True, None


@check("circle-boundary-unique", "flag-space",
       "each circle through an interior flag misses exactly one point of the model")
def _check_circle_boundary(rng, samples, tol):
    n = _n(samples, 500)
    for model in ("t", "a"):
        for _ in range(n):
            x = rand_interior_flag(rng, model)
            for which in ("alpha", "beta"):
                res = fs.circle_boundary_points(x, which, model)
                if res.full_circle or len(res.points) != 1:
                    return False, None
                if fs.region_classify(res.points[0], model) is fs.Region.INTERIOR:
                    return False, None
    return True, None


@check("circle-boundary-example", "flag-space",
       "the beta circle of the block-model base flag exits at ([e2], same line)")
def _check_circle_example(rng, samples, tol):
    res = fs.circle_boundary_points(fs.O_T, "beta", "t")
    expected = fs.Flag.of((0, 1, 0), (1, 0, 1))
    ok = not res.full_circle and res.points == (expected,)
    full = fs.circle_boundary_points(fs.Flag.of((1, 0, 0), (0, 1, 0)), "beta", "t")
    return ok and full.full_circle, None


@check("fundamental-isotropy-vanishing", "flag-space",
       "upper-triangular generators have zero velocity at the base flag")
def _check_fundamental_isotropy(rng, samples, tol):
    n = _n(samples, 100)
    # carries the base flag to the affine anchor, inside the chart
    carry = lc.GroupElem([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    for _ in range(n):
        v = lc.LieVec.of([[rand_frac(rng) if j >= i else 0 for j in range(3)]
                          for i in range(3)])
        moved = lc.conjugate(carry, v)
        w = fs.fundamental_vector(moved, fs.act(carry, fs.BASE_FLAG))
        if any(c != 0 for c in w):
            return False, None
    return True, None


@check("fundamental-central-velocity", "flag-space",
       "the corner generator moves the affine base flag with velocity (1, 0, 0)")
def _check_fundamental_z(rng, samples, tol):
    return fs.fundamental_vector(md.HEIS_Z, fs.O_A) == (1, 0, 0), None


@check("fundamental-finite-difference", "flag-space",
       "closed-form velocity agrees with a first-order difference quotient")
def _check_fundamental_fd(rng, samples, tol):
    n = _n(samples, 30)
    for _ in range(n):
        v = rand_traceless(rng)
        x = rand_interior_flag(rng, "a")
        w = fs.fundamental_vector(v, x)
        h = Fraction(1, 10 ** 8)
        # rational first-order step: (I + h v) approximates exp(h v)
        step = lc.GroupElem([[Fraction(int(i == j)) + h * v.entries[i][j]
                              for j in range(3)] for i in range(3)])
        moved = fs.act(step, x)
        c0 = fs.chart_coords(x)
        c1 = fs.chart_coords(moved)
        diff = [(a - b) / h for a, b in zip(c1, c0)]
        err = max(abs(float(d - ww)) for d, ww in zip(diff, w))
        if err > 1e-4:
            return False, err
    return True, None


# ---------------------------------------------------------------------------
# curvature suite
# ---------------------------------------------------------------------------

@check("curvature-diagonal-exponents", "curvature",
       "(p.K)_alpha = a^-1 b^-5 K_alpha and (p.K)_beta = a^5 b K_beta, exact")
def _check_curvature_exponents(rng, samples, tol):
    n = _n(samples, 1000)
    for _ in range(n):
        p = rand_upper(rng)
        k = curv.NormalCurvature.of(*(rand_frac(rng) for _ in range(4)))
        out = curv.curvature_action(p, k)
        if out.k_alpha != curv.alpha_scale(p) * k.k_alpha:
            return False, None
        if out.k_beta != curv.beta_scale(p) * k.k_beta:
            return False, None
    return True, None


@check("curvature-exponent-sampling", "curvature",
       "diagonal scaling with (a, b) = (s, 1) multiplies the two components "
       "by s^-1 and s^5 for s in {2, 3, 5}")
def _check_curvature_sampling(rng, samples, tol):
    for s in (2, 3, 5):
        p = lc.GroupElem([[s, 0, 0], [0, Fraction(1, s), 0], [0, 0, 1]])
        k = curv.NormalCurvature.of(1, 1, 0, 0)
        out = curv.curvature_action(p, k)
        if out.k_alpha != Fraction(1, s) or out.k_beta != Fraction(s) ** 5:
            return False, None
    return True, None


@check("curvature-left-action", "curvature",
       "action(pq, K) = action(p, action(q, K)), exact")
def _check_curvature_action(rng, samples, tol):
    n = _n(samples, 200)
    for _ in range(n):
        p, q = rand_upper(rng), rand_upper(rng)
        k = curv.NormalCurvature.of(*(rand_frac(rng) for _ in range(4)))
        if curv.curvature_action(p @ q, k) != curv.curvature_action(
                p, curv.curvature_action(q, k)):
            return False, None
    return True, None


@check("harmonic-subspace-invariant", "curvature",
       "the two-dimensional harmonic subspace is preserved exactly")
def _check_harmonic(rng, samples, tol):
    if not curv.is_harmonic(curv.NormalCurvature.zero()):
        return False, None
    if curv.is_harmonic(curv.NormalCurvature.of(1, 0, 0, 0)):
        return False, None
    n = _n(samples, 100)
    for _ in range(n):
        p = rand_upper(rng)
        k = curv.NormalCurvature.of(0, 0, rand_frac(rng), rand_frac(rng))
        if not curv.is_harmonic(curv.curvature_action(p, k)):
            return False, None
    return True, None


@check("contact-heis-fields", "curvature",
       "left-invariant generating pair of the nilpotent group is contact "
       "everywhere; commuting coordinate fields are not")
def _check_contact_heis(rng, samples, tol):
    half = Fraction(1, 2)
    zero = lambda p: Fraction(0)
    xfield = curv.PolynomialField(
        lambda p: (1, 0, -half * p[1]),
        [[zero] * 3, [zero] * 3, [zero, lambda p: -half, zero]],
    )
    yfield = curv.PolynomialField(
        lambda p: (0, 1, half * p[0]),
        [[zero] * 3, [zero] * 3, [lambda p: half, zero, zero]],
    )
    const_a = curv.PolynomialField(lambda p: (1, 0, 0), [[zero] * 3] * 3)
    const_b = curv.PolynomialField(lambda p: (0, 1, 0), [[zero] * 3] * 3)
    n = _n(samples, 50)
    for _ in range(n):
        p = tuple(rand_frac(rng) for _ in range(3))
        if not curv.contact_test(xfield, yfield, p):
            return False, None
        if curv.contact_test(const_a, const_b, p):
            return False, None
    return True, None


@check("contact-model-frames", "curvature",
       "the invariant frames of both models are contact at interior points")
def _check_contact_frames(rng, samples, tol):
    n = _n(samples, 100)
    for model in ("t", "a"):
        gens = (md.SL2_E, md.SL2_F) if model == "t" else (md.HEIS_X, md.HEIS_Y)

        def pushed_field(gen, model=model):
            # pushed-forward fundamental field of the transported generator
            def field(p):
                flag = fs.flag_from_coords(*p)
                h = md.transporter(flag, model)
                return fs.fundamental_vector(lc.conjugate(h, gen), flag)
            return field

        alpha_field = pushed_field(gens[0])
        beta_field = pushed_field(gens[1])
        h = Fraction(1, 512)
        done = 0
        while done < n:
            x = rand_interior_flag(rng, model)
            p = fs.chart_coords(x)
            if not _stencil_interior(p, h, model):
                continue
            # rational step keeps the finite differences exact and small
            if not curv.contact_test(alpha_field, beta_field, p, h=h):
                return False, None
            done += 1
    return True, None


def _stencil_interior(p, h, model) -> bool:
    for j in range(3):
        for sign in (1, -1):
            for step in (h, h / 2, h / 4):
                q = list(p)
                q[j] += sign * step
                flag = fs.flag_from_coords(*q)
                if fs.region_classify(flag, model) is not fs.Region.INTERIOR:
                    return False
    return True


@check("contact-rescaling-invariance", "curvature",
       "the contact verdict is unchanged by nonvanishing rescalings")
def _check_contact_rescaling(rng, samples, tol):
    base_a = curv.PolynomialField(lambda p: (0, 0, 1), [[lambda p: 0] * 3] * 3)

    def beta(p):
        return (p[2], 1, 0)

    n = _n(samples, 30)
    for _ in range(n):
        c = abs(rand_frac(rng)) + 1

        def scaled(p, c=c):
            f = c + p[0] * p[0]
            return (f * p[2], f, 0)

        p = tuple(float(rand_frac(rng)) for _ in range(3))
        if curv.contact_test(base_a, beta, p, h=1e-4) != curv.contact_test(
                base_a, scaled, p, h=1e-4):
            return False, None
    return True, None


@check("flow-commutator-heis", "curvature",
       "commuting-flow rectangle of the nilpotent pair equals the central "
       "exponential exactly")
def _check_flow_comm_heis(rng, samples, tol):
    worst = 0.0
    for t in (0.5, 0.1, 1e-2):
        d = curv.flow_commutator_defect(md.HEIS_X, md.HEIS_Y, t)
        worst = max(worst, d)
    same = curv.flow_commutator_defect(rand_traceless(rng), rand_traceless(rng), 0.0)
    return worst <= 1e-12 and same <= 1e-15, worst


@check("flow-commutator-slope", "curvature",
       "log-log slope of the rectangle defect is >= 2.9 (third order)")
def _check_flow_comm_slope(rng, samples, tol):
    n = _n(samples, 20)
    worst = 10.0
    for _ in range(n):
        u, v = rand_traceless(rng), rand_traceless(rng)
        if lc.bracket(u, v).is_zero():
            continue
        slope = curv.commutator_slope(u, v)
        worst = min(worst, slope)
        if slope < 2.9:
            return False, slope
    return True, worst


# ---------------------------------------------------------------------------
# models suite
# ---------------------------------------------------------------------------

@check("heis-group-law", "models",
       "[x,y,z][x',y',z'] = [x+x', y+y', z+z'+xy'] and exact exp round-trip")
def _check_heis_law(rng, samples, tol):
    n = _n(samples, 200)
    for _ in range(n):
        g, h = rand_heis(rng), rand_heis(rng)
        prod = g.mul(h)
        if (prod.x, prod.y, prod.z) != (g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y):
            return False, None
        if md.HeisElem.from_exponential(*g.to_exponential()) != g:
            return False, None
        if g.mul(g.inverse()) != md.HeisElem.identity():
            return False, None
    return True, None


@check("auto-composition-law", "models",
       "diagonal automorphisms compose by multiplying parameters")
def _check_auto_law(rng, samples, tol):
    n = _n(samples, 200)
    for _ in range(n):
        f, g = rand_auto(rng), rand_auto(rng)
        h = rand_heis(rng)
        if f.compose(g) != md.HeisAuto.of(f.lam * g.lam, f.mu * g.mu):
            return False, None
        if f.apply(g.apply(h)) != f.compose(g).apply(h):
            return False, None
        if f.compose(f.inverse()) != md.HeisAuto.identity():
            return False, None
    return True, None


@check("auto-is-automorphism", "models",
       "each diagonal automorphism preserves the group law")
def _check_auto_homo(rng, samples, tol):
    n = _n(samples, 200)
    for _ in range(n):
        f = rand_auto(rng)
        g, h = rand_heis(rng), rand_heis(rng)
        if f.apply(g.mul(h)) != f.apply(g).mul(f.apply(h)):
            return False, None
    return True, None


@check("equivariance-affine-display", "models",
       "diagonal (lam, lam^-1 mu^-1, mu) maps to (identity, phi_{lam^2 mu, lam^-1 mu^-2})")
def _check_equiv_a_display(rng, samples, tol):
    n = _n(samples, 100)
    for _ in range(n):
        lam, mu = rand_frac(rng), rand_frac(rng)
        if lam == 0 or mu == 0:
            continue
        p = lc.GroupElem([[lam, 0, 0], [0, 1 / (lam * mu), 0], [0, 0, mu]])
        h, phi = md.equivariance_a(p)
        if h != md.HeisElem.identity():
            return False, None
        if phi != md.HeisAuto.of(lam * lam * mu, 1 / (lam * mu * mu)):
            return False, None
    return True, None


@check("equivariance-affine-morphism", "models",
       "the upper-triangular identification is a group morphism onto the "
       "affine automorphism group")
def _check_equiv_a_morphism(rng, samples, tol):
    n = _n(samples, 100)
    for _ in range(n):
        p, q = rand_upper(rng), rand_upper(rng)
        lhs = md.equivariance_a(p @ q)
        rhs = md.heis_semidirect_mul(md.equivariance_a(p), md.equivariance_a(q))
        if lhs != rhs:
            return False, None
        if md.equivariance_a_inverse(*lhs) != p @ q:
            return False, None
    return True, None


@check("equivariance-affine-conjugates-action", "models",
       "the orbital identification conjugates the two actions")
def _check_equiv_a_action(rng, samples, tol):
    n = _n(samples, 100)
    for _ in range(n):
        p = rand_upper(rng)
        h = rand_heis(rng)
        hp, phi = md.equivariance_a(p)
        lhs = fs.act(p, fs.act(h.as_group_elem(), fs.O_A))
        rhs = fs.act(hp.mul(phi.apply(h)).as_group_elem(), fs.O_A)
        if lhs != rhs:
            return False, None
    return True, None


@check("equivariance-block-morphism", "models",
       "(s, lam) factorization is multiplicative with positive scale")
def _check_equiv_t_morphism(rng, samples, tol):
    n = _n(samples, 100)
    for _ in range(n):
        lam1, lam2 = rand_frac(rng), rand_frac(rng)
        if lam1 == 0 or lam2 == 0:
            continue
        s1, s2 = rand_sl2(rng), rand_sl2(rng)
        g1 = md.equivariance_t_inverse(s1, lam1)
        g2 = md.equivariance_t_inverse(s2, lam2)
        f1, l1 = md.equivariance_t(g1)
        f2, l2 = md.equivariance_t(g2)
        f12, l12 = md.equivariance_t(g1 @ g2)
        if l12 != l1 * l2:
            return False, None
        prod = tuple(tuple(sum(f1[i][k] * f2[k][j] for k in range(2))
                           for j in range(2)) for i in range(2))
        if f12 != prod:
            return False, None
    return True, None


@check("equivariance-block-conjugates-action", "models",
       "block elements act on the model orbit as (g, a) . s = g s a")
def _check_equiv_t_action(rng, samples, tol):
    n = _n(samples, 100)
    for _ in range(n):
        lam = rand_frac(rng)
        if lam == 0:
            continue
        g2 = rand_sl2(rng)
        s = rand_sl2(rng)
        big = md.equivariance_t_inverse(g2, lam)
        emb = md.equivariance_t_inverse(s, Fraction(1))
        lhs = fs.act(big, fs.act(emb, fs.O_T))
        prod = tuple(tuple(sum(g2[i][k] * s[k][j] for k in range(2))
                           for j in range(2)) for i in range(2))
        a = ((lam, Fraction(0)), (Fraction(0), 1 / lam))
        prod_a = tuple(tuple(sum(prod[i][k] * a[k][j] for k in range(2))
                             for j in range(2)) for i in range(2))
        rhs = fs.act(md.equivariance_t_inverse(prod_a, Fraction(1)), fs.O_T)
        if lhs != rhs:
            return False, None
    return True, None


@check("frame-well-defined", "models",
       "two transports reaching the same flag produce the same frame lines")
def _check_frame_well_defined(rng, samples, tol):
    n = _n(samples, 60)
    for _ in range(n):
        x = rand_interior_flag(rng, "a")
        frame = md.frame_at(x, "a")
        # stabilizer of the affine base flag: diagonal elements
        d = lc.GroupElem([[nonzero_frac(rng), 0, 0],
                          [0, nonzero_frac(rng), 0],
                          [0, 0, nonzero_frac(rng)]])
        h = md.transporter(x, "a") @ d
        lines = [md._normalize_direction(fs.fundamental_vector(lc.conjugate(h, g), x))
                 for g in (md.HEIS_X, md.HEIS_Y, md.HEIS_Z)]
        if (frame.line_alpha, frame.line_beta, frame.line_c) != tuple(lines):
            return False, None
    return True, None


def nonzero_frac(rng):
    while True:
        f = rand_frac(rng)
        if f != 0:
            return f


@check("frame-base-values", "models",
       "base frames: central line direction e1 in the chart at both anchors")
def _check_frame_base(rng, samples, tol):
    fa = md.frame_at(fs.O_A, "a")
    ok = fa.line_alpha == (0, 0, 1) and fa.line_beta == (0, 1, 0) and fa.line_c == (1, 0, 0)
    ft = md.frame_at(fs.O_T, "t")
    ok = ok and ft.line_alpha == (0, 0, 1) and ft.line_beta == (0, 1, 0) and ft.line_c == (1, 0, 0)
    return ok, None


@check("frame-contact-pair-standard", "models",
       "the frame's circle directions match the standard pair at random points")
def _check_frame_contact_pair(rng, samples, tol):
    n = _n(samples, 100)
    for model in ("t", "a"):
        for _ in range(n):
            x = rand_interior_flag(rng, model)
            fr = md.frame_at(x, model)
            px, py, z = fs.chart_coords(x)
            std_alpha = (Fraction(0), Fraction(0), Fraction(1))
            std_beta = md._normalize_direction((z, Fraction(1), Fraction(0)))
            if fr.line_alpha != std_alpha or fr.line_beta != std_beta:
                return False, None
    return True, None


@check("flat-structure-iso", "models",
       "automorphism matrix [[a,a',0],[b,b',0],[c,c',ab'-ba']] on the basis "
       "(X, Y, Z); rejects non-contact pairs")
def _check_flat_iso(rng, samples, tol):
    ident = md.flat_structure_iso(md.HEIS_X, md.HEIS_Y)
    if ident != ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        return False, None
    ex = md.flat_structure_iso(md.HEIS_X + md.HEIS_Z, md.HEIS_Y)
    if ex != ((1, 0, 0), (0, 1, 0), (1, 0, 1)):
        return False, None
    try:
        md.flat_structure_iso(md.HEIS_X, md.HEIS_X.scale(3) + md.HEIS_Z)
        return False, None
    except md.ContactConditionError:
        pass
    n = _n(samples, 100)
    basis = (md.HEIS_X, md.HEIS_Y, md.HEIS_Z)
    for _ in range(n):
        v = sum((b.scale(rand_frac(rng)) for b in basis), lc.LieVec.zero())
        w = sum((b.scale(rand_frac(rng)) for b in basis), lc.LieVec.zero())
        try:
            m = md.flat_structure_iso(v, w)
        except md.ContactConditionError:
            continue

        def apply(mat, u):
            coords = (u.entries[0][1], u.entries[1][2], u.entries[0][2])
            return sum((basis[i].scale(sum(mat[i][j] * coords[j] for j in range(3)))
                        for i in range(3)), lc.LieVec.zero())

        for u1, u2 in ((md.HEIS_X, md.HEIS_Y), (md.HEIS_X, md.HEIS_Z), (md.HEIS_Y, md.HEIS_Z)):
            lhs = apply(m, lc.bracket(u1, u2))
            rhs = lc.bracket(apply(m, u1), apply(m, u2))
            if lhs != rhs:
                return False, None
    return True, None


@check("affine-linearization", "models",
       "linear part [[lam,0,0],[0,mu,0],[0,mu x,lam mu]] with translation "
       "(x,y,z); injective morphism")
def _check_theta_affine(rng, samples, tol):
    ident = md.theta_affine(md.HeisElem.identity(), md.HeisAuto.identity())
    if ident != md.AffineMap.identity():
        return False, None
    n = _n(samples, 100)
    for _ in range(n):
        g1, g2 = rand_heis(rng), rand_heis(rng)
        f1, f2 = rand_auto(rng), rand_auto(rng)
        prod = md.heis_semidirect_mul((g1, f1), (g2, f2))
        lhs = md.theta_affine(*prod)
        rhs = md.theta_affine(g1, f1).compose(md.theta_affine(g2, f2))
        if lhs != rhs:
            return False, None
        m = md.theta_affine(g1, f1)
        expected_linear = ((f1.lam, 0, 0), (0, f1.mu, 0), (0, f1.mu * g1.x, f1.lam * f1.mu))
        if m.linear != tuple(tuple(map(Fraction, r)) for r in expected_linear):
            return False, None
        if m.translation != (g1.x, g1.y, g1.z):
            return False, None
    return True, None


@check("central-flow-identity", "models",
       "alpha-beta rectangle equals x + t^2 e1 exactly, both sign variants")
def _check_central_flow(rng, samples, tol):
    if md.commutator_identity_check((0, 0, 0), 1) != (True, True):
        return False, None
    n = _n(samples, 1000)
    for _ in range(n):
        p = tuple(rand_frac(rng) for _ in range(3))
        t = rand_frac(rng)
        plus, minus = md.commutator_identity_check(p, t)
        if not (plus and minus):
            return False, None
    return True, None


# ---------------------------------------------------------------------------
# classification suite
# ---------------------------------------------------------------------------

@check("subalgebra-table", "classification",
       "dimensions, closure, the 4-or-5 bound, and centralizer values")
def _check_subalgebra_table(rng, samples, tol):
    return all(r.passed for r in cls.verify_subalgebra_table()), None


@check("isotropy-table-block", "classification",
       "block-model isotropy acts with diagonal [3a, -3a, 0]")
def _check_isotropy_t(rng, samples, tol):
    table = cls.isotropy_eigenvalue_table("t")
    expected = cls.EXPECTED["isotropy-t"]
    diag = tuple(table[i][i] for i in range(3))
    off = all(table[i][j] == (0, 0) for i in range(3) for j in range(3) if i != j)
    return diag == tuple((Fraction(a), Fraction(b)) for a, b in expected) and off, None


@check("isotropy-table-affine", "classification",
       "affine-model isotropy acts with diagonal [2a+b, -a-2b, a-b]")
def _check_isotropy_a(rng, samples, tol):
    table = cls.isotropy_eigenvalue_table("a")
    expected = cls.EXPECTED["isotropy-a"]
    diag = tuple(table[i][i] for i in range(3))
    off = all(table[i][j] == (0, 0) for i in range(3) for j in range(3) if i != j)
    return diag == tuple((Fraction(a), Fraction(b)) for a, b in expected) and off, None


@check("isotropy-table-translations-sl2", "classification",
       "nilpotent isotropy element has the single off-diagonal 1 in the "
       "(beta, center) slot")
def _check_isotropy_h1(rng, samples, tol):
    table = cls.isotropy_eigenvalue_table("h1")
    b_part = tuple(tuple(table[i][j][1] for j in range(3)) for i in range(3))
    expected = ((0, 0, 0), (0, 0, 1), (0, 0, 0))
    return b_part == tuple(tuple(map(Fraction, r)) for r in expected), None


@check("isotropy-table-similarity", "classification",
       "similarity-model isotropy has zero rate on the alpha direction")
def _check_isotropy_h2(rng, samples, tol):
    table = cls.isotropy_eigenvalue_table("h2")
    diag = tuple(table[i][i][0] for i in range(3))
    return diag == (0, 3, 3), None


@check("invariant-line-block", "classification",
       "the only invariant transverse line of the block model is the "
       "class of H")
def _check_line_t(rng, samples, tol):
    res = cls.invariant_transverse_line_search(cls.h_t(), fs.O_T)
    if res.kind != "unique":
        return False, None
    return cls.line_class_equals(res.generator, md.SL2_H, cls.h_t(), fs.O_T), None


@check("invariant-line-affine", "classification",
       "the only invariant transverse line of the affine model is the "
       "class of Z")
def _check_line_a(rng, samples, tol):
    res = cls.invariant_transverse_line_search(cls.h_a(), fs.O_A)
    if res.kind != "unique":
        return False, None
    return cls.line_class_equals(res.generator, md.HEIS_Z, cls.h_a(), fs.O_A), None


@check("invariant-line-translations-sl2", "classification",
       "the 5-dimensional translation extension admits no invariant "
       "transverse line")
def _check_line_h1(rng, samples, tol):
    res = cls.invariant_transverse_line_search(cls.h_1(), cls.X1_FLAG)
    return res.kind == "none", None


@check("invariant-line-similarity", "classification",
       "the similarity extension leaves a one-parameter family invariant")
def _check_line_h2(rng, samples, tol):
    res = cls.invariant_transverse_line_search(cls.h_2(), fs.O_A)
    return res.kind == "family" and res.family_dim == 1, None


@check("stabilizer-four-cases", "classification",
       "transverse stabilizers: full / diag(1,1,-2) / diag(-2,1,1) / zero")
def _check_stabilizer_cases(rng, samples, tol):
    table = cls.transverse_stabilizer_cases(cls.h_a(), fs.O_A)
    full = table["x=0,y=0"]
    if len(full) != 2:
        return False, None
    iy = table["x=0,y!=0"]
    if len(iy) != 1 or not _spans_line(iy[0], lc.LieVec.diag(1, 1, -2)):
        return False, None
    ix = table["x!=0,y=0"]
    if len(ix) != 1 or not _spans_line(ix[0], lc.LieVec.diag(-2, 1, 1)):
        return False, None
    return len(table["x!=0,y!=0"]) == 0, None


def _spans_line(v: lc.LieVec, target: lc.LieVec) -> bool:
    from .rational import in_span

    return in_span([target.flat()], v.flat()) and not v.is_zero()


@check("degeneration-matrices", "classification",
       "the four transported-generator matrices match their printed values "
       "at t in {1, 1/2, 1/10, 1/100}, and the projected line converges")
def _check_degeneration(rng, samples, tol):
    for case in ("t1", "t2", "a1", "a2"):
        for t in (Fraction(1), Fraction(1, 2), Fraction(1, 10), Fraction(1, 100)):
            res = cls.degeneration_limit(case, t)
            if not res.matches:
                return False, None
            if res.sine_distance > 3 * float(t):
                return False, res.sine_distance
    return True, None


@check("degeneration-symbolic", "classification",
       "entrywise Laurent interpolation reproduces the symbolic matrices")
def _check_degeneration_symbolic(rng, samples, tol):
    for case, data in cls.DEGENERATION_CASES.items():
        if cls.degeneration_symbolic(case) != data.expected:
            return False, None
    return True, None


@check("flatness-predicate", "classification",
       "holonomy diagonal (a, -a-b, b) forces flatness iff b != -5a and a != -5b")
def _check_flatness_predicate(rng, samples, tol):
    ok = cls.flatness_holonomy_predicate(1, -1)
    ok = ok and not cls.flatness_holonomy_predicate(1, -5)
    ok = ok and not cls.flatness_holonomy_predicate(-5, 1)
    ok = ok and not cls.flatness_holonomy_predicate(0, 0)
    return ok, None


@check("bracket-table-corner", "classification",
       "bracket relations of the corner generator against the graded basis")
def _check_tresse(rng, samples, tol):
    return all(r.passed for r in cls.tresse_bracket_suite()), None


# ---------------------------------------------------------------------------
# dynamics suite
# ---------------------------------------------------------------------------

_CAT = ((2, 1), (1, 1))


@check("lattice-closure", "dynamics",
       "integer-integer-half-integer points are closed under the group law "
       "and invariant under determinant-one integer linear parts")
def _check_lattice(rng, samples, tol):
    n = _n(samples, 200)
    for _ in range(n):
        g = dyn.LATTICE.random_element(rng)
        h = dyn.LATTICE.random_element(rng)
        if not dyn.LATTICE.contains(dyn.heis_mul(g, h)):
            return False, None
    f = dyn.NilMap.of(_CAT)
    for gen in dyn.LATTICE.generators:
        if not dyn.LATTICE.contains(f.apply(np.array(gen))):
            return False, None
    return True, None


@check("reduce-retraction", "dynamics",
       "fundamental-domain reduction is idempotent and lattice invariant")
def _check_reduce(rng, samples, tol):
    n = _n(samples, 2000)
    for _ in range(n):
        p = np.array([rng.uniform(-8, 8) for _ in range(3)])
        r = dyn.reduce_point(p)
        if not np.array_equal(dyn.reduce_point(r), r):
            return False, None
        g = dyn.LATTICE.random_element(rng)
        r2 = dyn.reduce_point(dyn.heis_mul(g, p))
        if np.max(np.abs(r2 - r)) > 1e-9:
            return False, None
    return True, None


@check("reduce-commutes-with-map", "dynamics",
       "reduce(f(p)) = reduce(f(reduce(p))) up to lattice translation")
def _check_reduce_commute(rng, samples, tol):
    f = dyn.NilMap.of(_CAT, (0.5, 1.5, 0.25))
    n = _n(samples, 2000)
    for _ in range(n):
        p = np.array([rng.uniform(-8, 8) for _ in range(3)])
        a = dyn.reduce_point(f.apply(p))
        b = dyn.reduce_point(f.apply(dyn.reduce_point(p)))
        if np.max(np.abs(a - b)) > 1e-8:
            return False, None
    return True, None


@check("lyapunov-cat-map", "dynamics",
       "measured rates match log((3+sqrt(5))/2), its negative, and zero")
def _check_lyapunov(rng, samples, tol):
    f = dyn.NilMap.of(_CAT, (0.5, 1.0, 0.3))
    lam = (3 + math.sqrt(5)) / 2
    ru = dyn.tangent_rates(f, "u")
    rs = dyn.tangent_rates(f, "s")
    rc = dyn.tangent_rates(f, "c")
    ok = abs(ru.measured - math.log(lam)) <= 1e-3
    ok = ok and abs(rs.measured + math.log(lam)) <= 1e-3
    ok = ok and abs(rc.measured) <= 1e-6
    worst = max(abs(ru.measured - math.log(lam)), abs(rs.measured + math.log(lam)),
                abs(rc.measured))
    return ok, worst


@check("sl2-frame-rates", "dynamics",
       "frame rates of the diagonal flow are (-2t, 2t, 0), from brackets")
def _check_sl2_rates(rng, samples, tol):
    if dyn.sl2_frame_rates(1.0) != (-2.0, 2.0, 0.0):
        return False, None
    if dyn.sl2_frame_rates(0.0) != (0.0, 0.0, 0.0):
        return False, None
    for _ in range(10):
        t = rng.uniform(-3, 3)
        plus = dyn.sl2_frame_rates(t)
        minus = dyn.sl2_frame_rates(-t)
        if any(a != -b for a, b in zip(plus, minus)):
            return False, None
    return True, None


@check("hyperbolicity-certificates", "dynamics",
       "cat map and diagonal time-one map certify with N = 1; an expanding "
       "pair fails the contraction clause")
def _check_hyperbolicity(rng, samples, tol):
    rep = dyn.hyperbolicity_report(dyn.NilMap.of(_CAT, (0.5, 0.0, 0.125)))
    if not (rep.partially_hyperbolic and rep.n_certified == 1):
        return False, None
    rep2 = dyn.hyperbolicity_report(dyn.Sl2TimeMap(1.0))
    if not (rep2.partially_hyperbolic and rep2.n_certified == 1):
        return False, None
    rep3 = dyn.hyperbolicity_report((math.log(2), math.log(3), math.log(6)))
    return rep3.inconclusive and not rep3.partially_hyperbolic, None


@check("volume-obstruction", "dynamics",
       "same-side multiplier pairs are obstructed; reciprocal pairs admissible")
def _check_volume(rng, samples, tol):
    ok = dyn.volume_obstruction_check(0.5, 1 / 3) == "obstructed"
    ok = ok and dyn.volume_obstruction_check(2.0, 3.0) == "obstructed"
    ok = ok and dyn.volume_obstruction_check(2.618, 1 / 2.618) == "admissible"
    ok = ok and dyn.volume_obstruction_check(1.0, 1.0) == "admissible"
    return ok, None


REGISTRY = tuple(_REGISTRY)
