"""Self-check suite behind the ``verify`` CLI command.

Each check evaluates one library invariant at a configurable size and
reports the observed deviation against its bound.  Linear-algebra
identities use a tight fixed tolerance; quadrature-mediated identities
use a configurable one so the suite can demonstrate failure reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gfd, phase_space as ps
from .clebsch import HalfInt, clebsch_gordan
from .models import FermionicModel, MultipartiteModel, QrtModel, SpinModel
from .paulis import majorana


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    bound: float
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "value": float(self.value),
            "bound": float(self.bound),
            "tolerance": float(self.tolerance),
        }


def _result(name: str, value: float, bound: float) -> CheckResult:
    return CheckResult(name, bool(value <= bound), float(value), float(bound),
                       float(bound))


def make_model(qrt: str, spin_S="2", n: int = 2) -> QrtModel:
    if qrt == "spin":
        return SpinModel(HalfInt.of(spin_S))
    if qrt == "multipartite":
        return MultipartiteModel(n)
    if qrt == "fermionic":
        return FermionicModel(n)
    raise ValueError(f"unknown model kind {qrt!r}")


def _random_hermitian(dim: int, rng) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def run_checks(qrt: str = "spin", spin_S="2", n: int = 2, seed: int = 0,
               quad_tol: float = 1e-8, lin_tol: float = 1e-10) -> list[CheckResult]:
    """Run the invariant suite for one model; returns per-check results."""
    model = make_model(qrt, spin_S, n)
    rng = np.random.default_rng(seed)
    results = []

    # CG orthogonality over a small exhaustive range.
    dev = 0.0
    for tj1 in range(0, 5):
        for tj2 in range(0, 5):
            for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                for tM in range(-tJ, tJ + 1, 2):
                    acc = 0.0
                    for tm1 in range(-tj1, tj1 + 1, 2):
                        tm2 = tM - tm1
                        if abs(tm2) > tj2:
                            continue
                        acc += clebsch_gordan(
                            HalfInt(tj1), HalfInt(tm1), HalfInt(tj2),
                            HalfInt(tm2), HalfInt(tJ), HalfInt(tM)) ** 2
                    dev = max(dev, abs(acc - 1.0))
    results.append(_result("cg_normalization", dev, lin_tol))

    # Majorana anticommutation on a small register.
    nmodes = 2 * min(getattr(model, "n", 2), 3) if qrt != "spin" else 4
    reg = nmodes // 2
    dev = 0.0
    for mu in range(1, nmodes + 1):
        for nu in range(1, nmodes + 1):
            a, b = majorana(mu, reg), majorana(nu, reg)
            anti = (a * b).to_dense() + (b * a).to_dense()
            target = 2 * np.eye(2 ** reg) if mu == nu else 0.0
            dev = max(dev, float(np.max(np.abs(anti - target))))
    results.append(_result("majorana_anticommutation", dev, lin_tol))

    # Sector weights: two routes and normalization.
    dev = max(abs(model.tau(lam) - model.tau_from_hw(lam))
              for lam in model.labels())
    results.append(_result("tau_two_route", dev, lin_tol))
    total = sum(model.irrep_dim(lam) * model.tau(lam) for lam in model.labels())
    results.append(_result("tau_normalization", abs(total - 1.0), lin_tol))

    # Sector bases: Hermitian, orthonormal, complete.
    dev = 0.0
    gram_blocks = []
    for block in model.blocks():
        dev = max(dev, max(float(np.max(np.abs(B - B.conj().T)))
                           for B in block.basis))
        gram_blocks.append(block.basis.reshape(block.dim, -1))
    allb = np.vstack(gram_blocks)
    gram = allb.conj() @ allb.T
    dev = max(dev, float(np.max(np.abs(gram - np.eye(len(allb))))))
    results.append(_result("sector_orthonormality", dev, lin_tol))
    A = _random_hermitian(model.dim, rng)
    recon = sum(block.project(A) for block in model.blocks())
    results.append(_result("sector_completeness",
                           float(np.max(np.abs(recon - A))), lin_tol))

    # Highest-weight kernel: the s = -1 kernel is the coherent projector.
    pt = model.random_point(rng)
    D = ps.sw_kernel(model, pt, ps.KernelSpec.cahill_glauber(-1.0))
    psi = model.coherent_state(pt)
    dev = float(np.max(np.abs(D - np.outer(psi, psi.conj()))))
    results.append(_result("husimi_projector", dev, lin_tol))

    # Kernel sector purities are point-independent (scale-aware deviation).
    dev = 0.0
    for s in (-1.0, 0.0, 1.0):
        Dk = ps.sw_kernel(model, pt, ps.KernelSpec.cahill_glauber(s))
        spec = gfd.purity_spectrum(Dk, model)
        for lam in model.labels():
            ref = gfd.kernel_purity(model, lam, s)
            dev = max(dev, abs(spec[lam] - ref) / (1 + abs(ref)))
    results.append(_result("kernel_purity_flat", dev, 100 * lin_tol))

    # Conjugation covariance of symbols.
    g = model.random_group(rng)
    Ug = model.group_unitary(g)
    lhs = ps.symbol(model, Ug.conj().T @ A @ Ug, pt,
                    ps.KernelSpec.cahill_glauber(0.0))
    rhs = ps.symbol(model, A, model.act(g, pt),
                    ps.KernelSpec.cahill_glauber(0.0))
    results.append(_result("symbol_covariance", abs(lhs - rhs), 100 * lin_tol))

    if qrt == "fermionic":
        dev = max(model.tau(lam) for lam in model.labels() if lam % 2 == 1)
        spec = gfd.purity_spectrum(
            ps.sw_kernel(model, pt, ps.KernelSpec.cahill_glauber(0.0)), model)
        dev = max(dev, max(spec[lam] for lam in model.labels() if lam % 2 == 1))
        results.append(_result("odd_sector_zero", dev, 1e-20))
        return results

    # Quadrature-mediated identities (structured grids only).
    grid = ps.default_grid(model)
    w = np.asarray(grid.weights)
    harm = ps.harmonic_matrix(model, grid.points)
    ally = np.vstack([harm[lam] for lam in model.labels()])
    gram = (ally * w) @ ally.T
    dev = float(np.max(np.abs(gram - np.eye(len(ally)))))
    results.append(_result("harmonic_orthonormality", dev, quad_tol))

    B = _random_hermitian(model.dim, rng)
    dev = 0.0
    dev_tr = 0.0
    dev_rec = 0.0
    dev_std = 0.0
    for s in (-1.0, 0.0, 1.0):
        fa = ps.symbol_field(model, A, grid, ps.KernelSpec.cahill_glauber(s))
        fb = ps.symbol_field(model, B, grid, ps.KernelSpec.cahill_glauber(-s))
        lhs = complex(np.sum(w * np.conj(fa.values) * fb.values))
        rhs = complex(np.trace(A.conj().T @ B))
        dev_tr = max(dev_tr, abs(lhs - rhs) / (1 + abs(rhs)))
        dev_rec = max(dev_rec, float(np.max(np.abs(ps.reconstruct(fa) - A))))
        std = complex(np.sum(w * fa.values))
        dev_std = max(dev_std, abs(std - model.dim ** ((s - 1) / 2)
                                   * np.trace(A)))
        psi_h = model.haar_state(rng)
        rho = np.outer(psi_h, psi_h.conj())
        fr = ps.symbol_field(model, rho, grid, ps.KernelSpec.cahill_glauber(s))
        pt_quad = ps.phase_purity_quadrature(fr, harmonics=harm)
        pt_ref = gfd.phase_purity(gfd.purity_spectrum(rho, model), s, model)
        for lam in model.labels():
            ref = pt_ref[lam]
            dev = max(dev, abs(pt_quad[lam] - ref) / (1 + abs(ref)))
    results.append(_result("filter_identity", dev, quad_tol))
    results.append(_result("tracing", dev_tr, quad_tol))
    results.append(_result("reconstruction", dev_rec, quad_tol))
    results.append(_result("standardization", dev_std, quad_tol))
    return results
