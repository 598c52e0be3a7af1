"""Executable property suites behind ``superpos verify``.

Every suite returns a list of :class:`PropertyResult`; a property fails when
any sampled instance violates it.  Randomness flows from a single seed so
runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import channels as ch
from . import dynamics as dy
from . import interferometer as itf
from . import secondq as sq
from .core import (
    align_basis,
    as_decomposition,
    block_form,
    dagger,
    partial_trace,
    pinch,
    product_decomposition,
    relative_entropy,
    singular_values,
    von_neumann_entropy,
)
from .formation import FormationConfig, PureStateEnsemble
from .measures import (
    NormSpec,
    a_f,
    a_s,
    a_s_min_check,
    dominance_check,
    kyfan_bound,
    kyfan_measures,
    norm_measure,
    predictability,
    sharp_state,
)
from .sampling import (
    random_block_unitary,
    random_density,
    random_pure,
    random_qubit_state,
    random_unitary,
)

FAST_AF = FormationConfig(starts=2)


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    worst: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checked > 0

    def record(self, ok: bool, excess: float = 0.0) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
        self.worst = max(self.worst, float(excess))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.checked - self.failures}/{self.checked}"
        if self.note:
            text += f" ({self.note})"
        return text


@dataclass
class Results:
    items: dict[str, PropertyResult] = field(default_factory=dict)

    def __getitem__(self, name: str) -> PropertyResult:
        if name not in self.items:
            self.items[name] = PropertyResult(name)
        return self.items[name]

    def check_le(self, name: str, lhs: float, rhs: float, tol: float) -> None:
        self[name].record(lhs <= rhs + tol, lhs - rhs)

    def check_close(self, name: str, a: float, b: float, tol: float) -> None:
        self[name].record(abs(a - b) <= tol, abs(a - b))

    def list(self) -> list[PropertyResult]:
        return list(self.items.values())


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _random_dims(rng, max_block: int = 3, K: int = 2) -> list[int]:
    return [int(n) for n in rng.integers(1, max_block + 1, size=K)]


def _random_state(rng, dim: int) -> np.ndarray:
    return random_density(dim, int(rng.integers(1, dim + 1)), rng)


def _conj(U, rho):
    return U @ rho @ dagger(U)


# --- axioms ------------------------------------------------------------------

def _measure_table(L) -> dict[str, Callable]:
    L = as_decomposition(L)
    table = {"A_S": lambda r: a_s(r, L).value}
    if L.K == 2:
        for k in range(1, min(L.dims) + 1):
            table[f"A_({k})"] = lambda r, k=k: norm_measure(r, L, NormSpec.kyfan(k))
        table["A_(Tr)"] = lambda r: norm_measure(r, L, NormSpec.trace())
        table["Schatten-2"] = lambda r: norm_measure(r, L, NormSpec.schatten(2))
    return table


def _conditions(res: Results, tag: str, f: Callable, rho, rho2, U, L, mu: float) -> None:
    v = f(rho)
    res[f"C1 non-negativity [{tag}]"].record(v >= -1e-10, -v)
    z = f(pinch(rho, L))
    res[f"C2 vanishes on block-diagonal [{tag}]"].record(abs(z) <= 1e-8, abs(z))
    off = np.max(np.abs(rho - pinch(rho, L)))
    if off > 1e-3:
        res[f"C2 positive off block-diagonal [{tag}]"].record(v > 1e-8, 0.0)
    res.check_close(f"C3 block-local unitary invariance [{tag}]", f(_conj(U, rho)), v, 1e-8)
    res.check_le(f"C4 convexity [{tag}]", f(mu * rho + (1 - mu) * rho2),
                 mu * v + (1 - mu) * f(rho2), 1e-8)


def axioms(samples: int = 200, seed: int = 0, af_samples: int | None = None) -> list[PropertyResult]:
    rng = _rng(seed)
    res = Results()
    af_samples = samples if af_samples is None else af_samples

    for _ in range(samples):
        L = _random_dims(rng, 3, int(rng.integers(2, 4)) if rng.random() < 0.3 else 2)
        d = sum(L)
        rho, rho2 = _random_state(rng, d), _random_state(rng, d)
        U = random_block_unitary(L, rng)
        mu = rng.random()
        for tag, f in _measure_table(L).items():
            _conditions(res, tag, f, rho, rho2, U, L, mu)

    # A_f: conditions on smaller structures (the optimizer dominates runtime)
    af_dims = ([1, 1], [1, 2], [2, 1], [1, 1, 1], [2, 2])
    for _ in range(af_samples):
        L = list(af_dims[int(rng.integers(len(af_dims)))])
        d = sum(L)
        rho, rho2 = _random_state(rng, d), _random_state(rng, d)
        U = random_block_unitary(L, rng)
        mu = rng.random()
        r1, r2 = a_f(rho, L, FAST_AF), a_f(rho2, L, FAST_AF)
        v = r1.value
        res["C1 non-negativity [A_f]"].record(v >= -1e-10, -v)
        z = a_f(pinch(rho, L), L, FAST_AF).value
        res["C2 vanishes on block-diagonal [A_f]"].record(abs(z) <= 1e-8, abs(z))
        if np.max(np.abs(rho - pinch(rho, L))) > 1e-3:
            res["C2 positive off block-diagonal [A_f]"].record(v > 1e-8)
        rotated = PureStateEnsemble(r1.witness.weights, r1.witness.vectors @ U.T)
        res.check_close("C3 block-local unitary invariance [A_f]",
                        a_f(_conj(U, rho), L, FAST_AF, [rotated]).value, v, 1e-8)
        union = PureStateEnsemble(np.concatenate([mu * r1.witness.weights, (1 - mu) * r2.witness.weights]),
                                  np.vstack([r1.witness.vectors, r2.witness.vectors]))
        lhs = a_f(mu * rho + (1 - mu) * rho2, L, FAST_AF, [union]).value
        res.check_le("C4 convexity [A_f]", lhs, mu * v + (1 - mu) * r2.value, 1e-8)
        res.check_le("A_S <= A_f", a_s(rho, L).value, v, 1e-4)

    for _ in range(samples):
        # additivity and ancilla monotonicity of A_S
        L1, L2 = _random_dims(rng, 2), _random_dims(rng, 2)
        rho, sig = _random_state(rng, sum(L1)), _random_state(rng, sum(L2))
        perm, L12 = product_decomposition(L1, L2)
        prod = np.kron(rho, sig)[np.ix_(perm, perm)]
        res.check_close("A_S additivity", a_s(prod, L12).value,
                        a_s(rho, L1).value + a_s(sig, L2).value, 1e-8)
        da = int(rng.integers(1, 4))
        big = _random_state(rng, sum(L1) * da)
        reduced = partial_trace(big, [sum(L1), da], [0])
        res.check_le("A_S ancilla monotonicity", a_s(reduced, L1).value,
                     a_s(big, [n * da for n in L1]).value, 1e-8)

    for _ in range(af_samples):
        # A_f subadditivity with the product of the factors' ensembles as a warm start
        rho = random_density(2, int(rng.integers(1, 3)), rng)
        sig = random_density(2, int(rng.integers(1, 3)), rng)
        e1, e2 = a_f(rho, [1, 1], FAST_AF), a_f(sig, [1, 1], FAST_AF)
        perm, L12 = product_decomposition([1, 1], [1, 1])
        w = np.outer(e1.witness.weights, e2.witness.weights).ravel()
        vecs = np.array([np.kron(a, b)[perm] for a in e1.witness.vectors for b in e2.witness.vectors])
        prod = np.kron(rho, sig)[np.ix_(perm, perm)]
        lhs = a_f(prod, L12, FAST_AF, [PureStateEnsemble(w, vecs)]).value
        res.check_le("A_f subadditivity", lhs, e1.value + e2.value, 1e-4)

        # A_f monotonicity with the Schmidt split of the joint witness as a warm start
        L = [[1, 1], [1, 2]][int(rng.integers(2))]
        da = 2
        big = random_density(sum(L) * da, int(rng.integers(1, 3)), rng)
        joint = a_f(big, [n * da for n in L], FAST_AF)
        weights, rows = [], []
        for lam, v in zip(joint.witness.weights, joint.witness.vectors):
            X, s, _ = np.linalg.svd(v.reshape(sum(L), da), full_matrices=False)
            for j in range(len(s)):
                if s[j] > 1e-12:
                    weights.append(lam * s[j] ** 2)
                    rows.append(X[:, j])
        split = PureStateEnsemble(np.array(weights) / np.sum(weights), np.array(rows))
        reduced = partial_trace(big, [sum(L), da], [0])
        res.check_le("A_f ancilla monotonicity", a_f(reduced, L, FAST_AF, [split]).value, joint.value, 1e-4)

    for _ in range(samples):
        L = _random_dims(rng, 3)
        rho = _random_state(rng, sum(L))
        p = predictability(rho, L)
        P1 = np.real(np.trace(rho[:L[0], :L[0]]))
        ky = kyfan_measures(rho, L)
        for k, v in enumerate(ky, start=1):
            res.check_le("A_(k) <= Ky-Fan bound", v, kyfan_bound(rho, L, k), 1e-9)
            res.check_le("A_(k) <= sqrt(p1 p2) <= 1/2", v, min(np.sqrt(P1 * (1 - P1)), 0.5), 1e-9)
            res.check_le("A_(k)^2 + P^2 <= 1", v ** 2 + p ** 2, 1.0, 1e-9)
        n1, n2 = L
        s1, s2 = rng.dirichlet(np.ones(n1)), rng.dirichlet(np.ones(n2))
        sharp = sharp_state(rng.random(), s1, s2)
        sky = kyfan_measures(sharp, L)
        for k in range(1, len(sky) + 1):
            res.check_close("sharp state attains the bound", sky[k - 1], kyfan_bound(sharp, L, k), 1e-9)

        sigma = _random_state(rng, sum(L))
        rep = dominance_check(rho, sigma, L, [NormSpec.schatten(q) for q in (1, 1.5, 2, 3, 7)])
        res["Fan dominance"].record(rep.consistent)
    return res.list()


# --- entropy -------------------------------------------------------------------

def entropy(samples: int = 100, seed: int = 0) -> list[PropertyResult]:
    rng = _rng(seed)
    res = Results()
    for _ in range(samples):
        L = _random_dims(rng, 4, int(rng.integers(2, 4)))
        L = L if sum(L) <= 8 else L[:2]
        d = sum(L)
        rho = _random_state(rng, d)
        P = pinch(rho, L)
        res.check_close("pinch idempotent", np.max(np.abs(pinch(P, L) - P)), 0.0, 1e-14)
        res.check_close("pinch trace preserving", np.real(np.trace(P)), 1.0, 1e-12)
        res["pinch positivity preserving"].record(np.linalg.eigvalsh(P).min() >= -1e-12)
        res.check_le("pinch mixing enhancing", von_neumann_entropy(rho), von_neumann_entropy(P), 1e-12)
        A = a_s(rho, L).value
        res.check_close("A_S entropy difference = relative entropy to pinch", relative_entropy(rho, P), A, 1e-9)
        m = a_s_min_check(rho, L, trials=20, seed=rng)
        res.check_close("A_S minimum attained at the pinch", m, A, 1e-9)
        bf = block_form(rho, L)
        res.check_close("block form reassembly", np.max(np.abs(bf.reassemble() - rho)), 0.0, 1e-8)
        top = max([singular_values(D)[0] for D in bf.off_diag.values()] + [0.0])
        res.check_le("block form contraction", top, 1.0, 1e-8)
        res.check_close("singular values of PSD = eigenvalues",
                        np.max(np.abs(singular_values(rho) - np.sort(np.linalg.eigvalsh(rho))[::-1])), 0.0, 1e-12)
        # rotated projector family, aligned back to contiguous blocks
        W = random_unitary(d, rng)
        projs = [W @ Pk @ dagger(W) for Pk in as_decomposition(L).projectors()]
        aligned, La = align_basis(rho, projs)
        direct = sum(Pk @ rho @ Pk for Pk in projs)
        res.check_close("A_S after basis alignment", a_s(aligned, La).value,
                        von_neumann_entropy(direct) - von_neumann_entropy(rho), 1e-9)
    return res.list()


# --- formation -----------------------------------------------------------------

def formation(samples: int = 50, seed: int = 0) -> list[PropertyResult]:
    rng = _rng(seed)
    res = Results()
    lift = sq.build_lift([1, 1])
    for _ in range(samples):
        rho = random_qubit_state(rng)
        af = a_f(rho, [1, 1]).value
        res.check_close("A_f equals two-qubit E_f of the lift", af, sq.wootters_ef(sq.lift_state(lift, rho)), 1e-4)
        res.check_le("A_S <= A_f", a_s(rho, [1, 1]).value, af, 1e-4)
    for _ in range(max(samples // 5, 1)):
        L = _random_dims(rng, 2, 2)
        v = random_pure(sum(L), rng)
        w = np.array([np.vdot(v[s], v[s]).real for s in (slice(0, L[0]), slice(L[0], None))])
        H = float(-np.sum(w[w > 0] * np.log(w[w > 0])))
        res.check_close("A_f of a pure state is its block entropy", a_f(np.outer(v, v.conj()), L).value, H, 1e-10)
    return res.list()


# --- second quantisation -------------------------------------------------------

def secondq(samples: int = 100, seed: int = 0) -> list[PropertyResult]:
    rng = _rng(seed)
    res = Results()
    for _ in range(samples):
        L = _random_dims(rng, 3)
        d = sum(L)
        lift = sq.build_lift(L)
        M = lift.matrix
        res.check_close("lift is an isometry", np.max(np.abs(M.T @ M - np.eye(d))), 0.0, 1e-12)
        rho = _random_state(rng, d)
        big = sq.lift_state(lift, rho)
        res.check_close("lift preserves entropy", von_neumann_entropy(big), von_neumann_entropy(rho), 1e-9)
        res.check_close("lifted pinch commutes with the lift",
                        np.max(np.abs(sq.lifted_pinch(lift, big) - sq.lift_state(lift, pinch(rho, L)))), 0.0, 1e-12)
        surrogate = sq.relative_entropy_surrogate(lift)
        res.check_close("A_S induced by relative entropy", sq.induced_measure(lift, surrogate, rho),
                        a_s(rho, L).value, 1e-9)
        U = random_block_unitary(L, rng)
        rot = sq.with_basis_change(lift, U)
        res.check_close("induced measure independent of lift basis", sq.induced_measure(rot, surrogate, rho),
                        sq.induced_measure(lift, surrogate, rho), 1e-9)

        pairs = lift.pairs()
        idn = sq.es_decomposition_identity(big, pairs)
        res.check_close("relative entropy of entanglement = A_S over the pair structure", idn.lhs, idn.rhs, 1e-9)

        # localized states lift to exact products
        k = int(rng.integers(2))
        local = np.zeros((d, d), dtype=complex)
        s = slice(0, L[0]) if k == 0 else slice(L[0], d)
        local[s, s] = _random_state(rng, L[k])
        lifted = sq.lift_state(lift, local)
        dimsAB = list(lift.target_dims)
        marg = np.kron(partial_trace(lifted, dimsAB, [0]), partial_trace(lifted, dimsAB, [1]))
        res.check_close("localized state lifts to a product", np.linalg.norm(lifted - marg), 0.0, 1e-8)

    for i in range(max(samples // 5, 1)):
        L = [[1, 1], [2, 1], [1, 2]][i % 3]
        lift = sq.build_lift(L)
        big = sq.lift_state(lift, _random_state(rng, sum(L)))
        pairs = lift.pairs()
        star = sq.candidate_min_separable(big, pairs)
        rep = sq.first_order_min_check(big, star, pairs.split, samples=200, seed=rng)
        res["first-order minimality of the pinched lift"].record(rep.passed, -rep.min_derivative)

    lift = sq.build_lift([1, 1])
    for _ in range(max(samples // 10, 1)):
        rho = random_qubit_state(rng)
        rep = sq.ef_superadditivity_check(sq.lift_state(lift, rho), lift.pairs())
        res["E_f = A_f for one-dimensional pairs"].record(rep.passed, abs(rep.ef - rep.af))
    return res.list()


# --- channels --------------------------------------------------------------------

def channels(samples: int = 100, seed: int = 0, n_channels: int = 20) -> list[PropertyResult]:
    rng = _rng(seed)
    res = Results()
    for _ in range(n_channels):
        L = _random_dims(rng, 3)
        phi = ch.random_sp_channel(L, int(rng.integers(1, 4)), rng)
        res["SP channels are SP"].record(ch.is_sp(phi, L))
        res["SP implies block preserving"].record(ch.is_block_preserving(phi, L))
        for m in ("as", "trace"):
            rep = ch.monotonicity_harness(phi, L, m, samples=samples, seed=rng)
            res[f"SP channels do not increase {'A_S' if m == 'as' else 'A_(Tr)'}"].record(rep.passed, rep.max_increase)
        rho = _random_state(rng, sum(L))
        res.check_close("SP block form", np.max(np.abs(ch.sp_block_form(phi, rho, L) - ch.apply(phi, rho))), 0.0, 1e-10)

    for _ in range(n_channels):
        L = _random_dims(rng, 3)
        lift = sq.build_lift(L)
        phi = ch.random_lsp_channel(lift, int(rng.integers(1, 4)), rng)
        res["LSP channels are SP"].record(ch.is_sp(phi, L))
        rep = ch.all_kyfan_monotone(phi, L, samples=samples, seed=rng)
        res["LSP channels do not increase any A_(k)"].record(rep.passed, rep.max_increase)
        rep = ch.monotonicity_harness(phi, L, "schatten:2", samples=samples // 4 or 1, seed=rng)
        res["LSP channels do not increase Schatten-2"].record(rep.passed, rep.max_increase)
        V, W = phi.certificate.off_diagonal_maps()
        rho = _random_state(rng, sum(L))
        out = ch.apply(phi, rho)
        res.check_close("LSP off-diagonal form", np.max(np.abs(out[:L[0], L[0]:] - V @ rho[:L[0], L[0]:] @ dagger(W))), 0.0, 1e-10)
        res.check_le("LSP off-diagonal maps are contractions", max(np.linalg.norm(V, 2), np.linalg.norm(W, 2)), 1.0, 1e-9)

    found = 0
    for _ in range(n_channels):
        L = _random_dims(rng, 3)
        phi = ch.random_mixing_channel(sum(L), rng)
        if ch.is_block_preserving(phi, L):
            continue
        rep = ch.monotonicity_harness(phi, L, "as", samples=samples, seed=rng, mode="search", pinched_inputs=True)
        found += rep.found
    r = res["non-block-preserving channels can increase A_S"]
    r.checked, r.failures = n_channels, 0 if found else 1
    r.note = f"{found} witnesses"

    rep = ch.monotonicity_harness(ch.collecting_sp_channel(3), [3, 3], "kyfan:1", samples=samples, seed=rng, mode="search")
    res["some SP channel increases A_(1)"].record(rep.found)

    for _ in range(5 * samples):
        n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        rep = ch.trace_contraction_check(*ch.random_contraction_instance(n, m, int(rng.integers(1, 4)),
                                                                         int(rng.integers(1, 4)), rng))
        res["trace-norm contraction"].record(rep.passed, rep.lhs - rep.rhs)
    return res.list()


# --- dynamics ---------------------------------------------------------------------

GRID = (0.0, 0.25, 0.5, 1.0, 2.0, 5.0)


def dynamics(samples: int = 5, seed: int = 0) -> list[PropertyResult]:
    res = Results()
    for N in (2, 3, 5):
        ts = dy.run_timeseries(dy.simple_scenario("f1", N), GRID)
        for i, t in enumerate(GRID):
            for k in range(1, N + 1):
                res.check_close("f1 closed form", ts.kyfan[i, k - 1], dy.analytic_nonlocal(N, 1.0, t, k), 1e-7)
            res.check_close("f1 trace measure constant at 1/2", ts.kyfan[i, -1], 0.5, 1e-7)
        ts = dy.run_timeseries(dy.simple_scenario("f2", N), GRID)
        for i, t in enumerate(GRID):
            for k in range(1, N + 1):
                res.check_close("f2 closed form", ts.kyfan[i, k - 1], dy.analytic_local(N, 1.0, t, k), 1e-7)
        long = dy.run_timeseries(dy.simple_scenario("f1", N), [0.0, 12.0])
        res.check_le("f1 long-time limit 1/2", 0.5 - long.kyfan[-1].min(), 0.01, 0.0)
        long = dy.run_timeseries(dy.simple_scenario("f2", N), [0.0, 12.0])
        res.check_le("f2 long-time limit 0", long.kyfan[-1].max(), 0.01, 0.0)

    witnesses = 0
    for s in range(seed, seed + samples):
        for kind in ("f1", "f2", "f3"):
            sc = dy.random_scenario(kind, 3, s)
            gmin = sc.g[sc.g > 0].min()
            ts = dy.run_timeseries(sc, np.linspace(0, 12 / gmin, 121))
            if kind == "f1":
                res.check_close("f1 conserves path weights", np.max(ts.predictability), 0.0, 1e-9)
                res.check_le("f1 A_S non-increasing", np.max(np.diff(ts.a_s)), 0.0, 1e-8)
                res.check_le("f1 A_(Tr) non-increasing", np.max(np.diff(ts.kyfan[:, -1])), 0.0, 1e-8)
                res.check_le("f1 reaches 1/2", 0.49 - ts.kyfan[-1].min(), 0.0, 0.0)
            elif kind == "f2":
                res.check_le("f2 A_(k) non-increasing", np.max(np.diff(ts.kyfan, axis=0)), 0.0, 1e-8)
                res.check_le("f2 decays to 0", ts.kyfan[-1].max(), 0.01, 0.0)
                g1, g2 = dy.local_generators(sc)
                lift = sq.build_lift([3, 3])
                rho0 = dy.initial_state(3)
                lhs = lift.matrix.T @ dy.evolve(dy.product_generator(g1, g2), sq.lift_state(lift, rho0), 1.0) @ lift.matrix
                res.check_close("f2 equals compressed product of local semigroups",
                                np.max(np.abs(lhs - dy.evolve(dy.build_scenario(sc), rho0, 1.0))), 0.0, 1e-10)
            else:
                rise = np.max(ts.kyfan[:, :2] - ts.kyfan[0, :2])
                witnesses += rise > 1e-3
    r = res["f3 mixture raises some A_(k), k < N"]
    r.checked, r.failures, r.note = samples, 0 if witnesses else 1, f"{witnesses}/{samples} seeds"

    gen = dy.build_scenario(dy.random_scenario("f3", 3, seed))
    rho = random_density(6, seed=seed)
    F = dy.liouvillian(gen)
    res.check_close("Liouvillian matches the direct generator",
                    np.max(np.abs(dy.unvec(F @ dy.vec(rho), 6) - gen.apply(rho))), 0.0, 1e-12)
    res.check_close("exponential agrees with RK4",
                    np.max(np.abs(dy.evolve(gen, rho, 1.5, F) - dy.evolve_rk4(gen, rho, 1.5))), 0.0, 1e-7)
    return res.list()


# --- interferometer ---------------------------------------------------------------

def interferometer(samples: int = 100, seed: int = 0, stochastic_seeds: int = 20) -> list[PropertyResult]:
    rng = _rng(seed)
    res = Results()
    for _ in range(samples):
        N = int(rng.integers(1, 5))
        rho = _random_state(rng, 2 * N)
        ky = kyfan_measures(rho, [N, N])
        prev = -np.inf
        for k in range(1, N + 1):
            U, V, val = itf.optimal_uv(rho, k)
            res.check_close("optimal (U, V) value = A_(k)", val, ky[k - 1], 1e-10)
            out = itf.run_protocol(rho, U, V, itf.filter_projector(N, k))
            res.check_close("optimal (U, V) contrast = A_(k)", out.contrast, ky[k - 1], 1e-10)
            res.check_le("p1 + p2 <= 1", out.p1 + out.p2, 1.0, 1e-12)
            res.check_le("value non-decreasing in filter rank", prev, val, 1e-12)
            prev = val
        # affine in the state
        rho2 = _random_state(rng, 2 * N)
        U, V = random_unitary(N, rng), random_unitary(N, rng)
        k = int(rng.integers(1, N + 1))
        PC = itf.filter_projector(N, k)
        mu = rng.random()
        a = itf.run_protocol(rho, U, V, PC)
        b = itf.run_protocol(rho2, U, V, PC)
        c = itf.run_protocol(mu * rho + (1 - mu) * rho2, U, V, PC)
        res.check_close("outcome affine in the state", c.p1, mu * a.p1 + (1 - mu) * b.p1, 1e-12)
    for s in range(stochastic_seeds):
        r = _rng([seed, s])
        N = int(r.integers(2, 5))
        rho = _random_state(r, 2 * N)
        k = int(r.integers(1, N + 1))
        ky = kyfan_measures(rho, [N, N])[k - 1]
        _, _, val = itf.stochastic_maximize(rho, k, 2000, seed=s)
        res.check_le("stochastic search never exceeds A_(k)", val, ky, 1e-12)
        res.check_le("stochastic search reaches A_(k)", ky - val, 1e-3, 0.0)
    return res.list()


SUITES: dict[str, Callable[..., list[PropertyResult]]] = {
    "axioms": axioms,
    "entropy": entropy,
    "formation": formation,
    "secondq": secondq,
    "channels": channels,
    "dynamics": dynamics,
    "interferometer": interferometer,
}


def run(name: str, samples: int | None = None, seed: int = 0) -> dict[str, list[PropertyResult]]:
    """Run one suite (or ``all``); ``samples`` overrides each suite's default."""
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {name!r}")
    kwargs = {"seed": seed} if samples is None else {"seed": seed, "samples": samples}
    return {n: SUITES[n](**kwargs) for n in names}
