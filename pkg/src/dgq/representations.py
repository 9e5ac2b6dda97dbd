"""Finite dimensional modules: vertical classes, simples, fusion and dimensions.

A module is stored as a bundle over the horizontal arrows: one space per
arrow, and for every box A a matrix from the space at b(A) to the space at
t(A).  Exact matrices are numpy object arrays of Fractions.  The only
floating point step is telling irreducible representations of the loop
groups apart, where a random central element is diagonalized; everything
it produces is checked against exact counts.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import core
from .double import DoubleGroupoid
from .element import Element, total
from .groupoid import Groupoid, connected_components, group
from .groups import conjugacy_classes
from .linalg import as_domain, inverse, pivot_columns, sparse_matrix, rank
from .report import ValidationReport
from .wha import Refused, ThetaWeights, WeakHopf, one_e

EIG_TOL = 1e-6


# -- vertical classes and loop groups ----------------------------------------------------

@dataclass(eq=False)
class ClassData:
    index: int
    members: list[int]          # horizontal arrows in the class
    basepoint: int
    loops: list[int]            # boxes with top and bottom at the basepoint
    loop_group: Groupoid        # labels are box ids, product is vertical composition


def vertical_classes(T: DoubleGroupoid) -> list[ClassData]:
    """Classes of horizontal arrows joined by boxes (top to bottom)."""
    parent = list(range(T.H.n_arrows))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for A in range(T.n):
        a, c = find(int(T.t[A])), find(int(T.b[A]))
        if a != c:
            parent[max(a, c)] = min(a, c)
    groups: dict[int, list[int]] = {}
    for x in range(T.H.n_arrows):
        groups.setdefault(find(x), []).append(x)
    out = []
    for i, members in enumerate(sorted(groups.values())):
        x = members[0]
        loops = [A for A in T.by_top.get(x, ()) if int(T.b[A]) == x]
        mul = lambda A, B: int(T.vcomp[A, B])
        out.append(ClassData(i, members, x, loops, group(loops, mul, int(T.vid[x]), name=f"B({x})")))
    checksum = sum(len(c.members) ** 2 * len(c.loops) for c in out)
    if checksum != T.n:
        raise AssertionError(f"class sizes give {checksum} boxes, expected {T.n}")
    return out


def class_of(classes: list[ClassData]) -> dict[int, int]:
    return {x: c.index for c in classes for x in c.members}


# -- irreducible representations of (twisted) group algebras ------------------------------

@dataclass
class IrrepLabel:
    value: complex      # eigenvalue of the random central element
    dim: int


def _clusters(values: np.ndarray, tol: float = EIG_TOL) -> list[tuple[complex, int]]:
    out: list[list] = []
    for v in sorted(values, key=lambda z: (round(z.real, 4), round(z.imag, 4))):
        for c in out:
            if abs(c[0] - v) < tol:
                c[1] += 1
                break
        else:
            out.append([v, 1])
    return [(complex(v), m) for v, m in out]


def _regular_matrices(n: int, product) -> list[np.ndarray]:
    """product(g, h) -> (k, scalar) or None; R_g e_h = scalar e_k."""
    mats = []
    for g in range(n):
        R = np.zeros((n, n), dtype=complex)
        for h in range(n):
            k, s = product(g, h)
            R[k, h] = complex(s)
        mats.append(R)
    return mats


def _central_coefficients(mats: list[np.ndarray], unit: int, rng: np.random.Generator) -> np.ndarray:
    """Coefficients of the average of u_g a u_g^{-1} for a random a; central."""
    n = len(mats)
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    A = sum(c * R for c, R in zip(a, mats))
    Z = sum(R @ A @ np.linalg.inv(R) for R in mats) / n
    return Z[:, unit]


def _irrep_labels(mats: list[np.ndarray], unit: int, n_classes: int | None, seed: int,
                  tries: int = 8) -> tuple[list[IrrepLabel], np.ndarray]:
    n = len(mats)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        z = _central_coefficients(mats, unit, rng)
        Z = sum(c * R for c, R in zip(z, mats))
        labels = []
        for v, m in _clusters(np.linalg.eigvals(Z)):
            d = int(round(m ** 0.5))
            if d * d != m:
                break
            labels.append(IrrepLabel(v, d))
        else:
            if sum(l.dim ** 2 for l in labels) == n and (n_classes is None or len(labels) == n_classes):
                return sorted(labels, key=lambda l: l.dim), z
    raise RuntimeError("could not separate the irreducible representations")


def irreducible_dims(g: Groupoid, seed: int = 0) -> list[int]:
    """Dimensions of the complex irreducible representations of a group."""
    if g.n_objects != 1:
        raise ValueError("a group (one object) is needed")
    mats = _regular_matrices(g.n_arrows, lambda a, b: (int(g.comp[a, b]), 1))
    labels, _ = _irrep_labels(mats, int(g.identity[0]), len(conjugacy_classes(g)), seed)
    return [l.dim for l in labels]


@dataclass(eq=False)
class LoopIrreps:
    cls: ClassData
    labels: list[IrrepLabel]
    central: np.ndarray     # coefficients on cls.loops


def loop_irreps(W: WeakHopf, cls: ClassData, seed: int = 0) -> LoopIrreps:
    """Irreducibles of the loop algebra at the basepoint, twisted by sigma."""
    T = W.T
    pos = {A: i for i, A in enumerate(cls.loops)}

    def product(i, j):
        A, B = cls.loops[i], cls.loops[j]
        return pos[int(T.vcomp[A, B])], W.s(A, B)

    mats = _regular_matrices(len(cls.loops), product)
    n_classes = None if W.sigma is not None and not W.sigma.is_trivial() else len(conjugacy_classes(cls.loop_group))
    labels, z = _irrep_labels(mats, pos[int(T.vid[cls.basepoint])], n_classes, seed)
    return LoopIrreps(cls, labels, z)


# -- bundles -----------------------------------------------------------------------------

def _zeros(m: int, n: int) -> np.ndarray:
    out = np.empty((m, n), dtype=object)
    out[...] = Fraction(0)
    return out


def _identity(n: int) -> np.ndarray:
    out = _zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


@dataclass(eq=False)
class Bundle:
    dims: dict[int, int]                        # horizontal arrow -> dimension
    action: dict[int, np.ndarray] = field(default_factory=dict)   # box -> matrix b(A) -> t(A)
    name: str = ""

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def graded_dims(self) -> dict[int, int]:
        return {x: d for x, d in self.dims.items() if d}

    def element_matrix(self, W: WeakHopf, u: Element) -> np.ndarray:
        """Action of an element on the whole space, blocks ordered by arrow."""
        T = W.T
        offs, n = self._offsets()
        out = _zeros(n, n)
        for A, c in u.items():
            t, b = int(T.t[A]), int(T.b[A])
            if self.dims[t] and self.dims[b]:
                out[offs[t]:offs[t] + self.dims[t], offs[b]:offs[b] + self.dims[b]] += self.action[A] * c
        return out

    def _offsets(self):
        offs, n = {}, 0
        for x in sorted(self.dims):
            offs[x] = n
            n += self.dims[x]
        return offs, n


def validate_bundle(W: WeakHopf, M: Bundle) -> ValidationReport:
    T = W.T
    rep = ValidationReport()
    for A in range(T.n):
        t, b = int(T.t[A]), int(T.b[A])
        rep.count("bundle-shape")
        if M.dims[t] != M.dims[b] or M.action[A].shape != (M.dims[t], M.dims[b]):
            rep.fail("bundle-shape", A)
    for x in range(T.H.n_arrows):
        rep.count("bundle-identity")
        if not np.array_equal(M.action[int(T.vid[x])], _identity(M.dims[x])):
            rep.fail("bundle-identity", x)
    for A in range(T.n):
        for B in T.by_top.get(int(T.b[A]), ()):
            rep.count("bundle-product")
            lhs = M.action[A].dot(M.action[B])
            if not np.array_equal(lhs, M.action[int(T.vcomp[A, B])] * W.s(A, B)):
                rep.fail("bundle-product", A, B)
    return rep


def _span_bundle(W: WeakHopf, spans: dict[int, list[int]], name: str) -> Bundle:
    """Submodule of the regular module spanned by boxes, graded by top."""
    T = W.T
    pos = {x: {B: i for i, B in enumerate(bs)} for x, bs in spans.items()}
    dims = {x: len(spans.get(x, ())) for x in range(T.H.n_arrows)}
    action = {}
    for A in range(T.n):
        t, b = int(T.t[A]), int(T.b[A])
        mat = _zeros(dims[t], dims[b])
        for j, B in enumerate(spans.get(b, ())):
            C = int(T.vcomp[A, B])
            mat[pos[t][C], j] = W.s(A, B)
        action[A] = mat
    return Bundle(dims, action, name)


def regular_bundle(W: WeakHopf) -> Bundle:
    T = W.T
    spans: dict[int, list[int]] = {}
    for B in range(T.n):
        spans.setdefault(int(T.t[B]), []).append(B)
    return _span_bundle(W, spans, "regular")


def class_bundle(W: WeakHopf, cls: ClassData) -> Bundle:
    """The left ideal of boxes with bottom at the basepoint of a class; as a
    module it is the simple of the class tensored with the regular
    representation of the loop group."""
    T = W.T
    spans: dict[int, list[int]] = {}
    for B in T.by_bottom.get(cls.basepoint, ()):
        spans.setdefault(int(T.t[B]), []).append(B)
    return _span_bundle(W, spans, f"class {cls.index}")


def bundle_from_module(W: WeakHopf, rho: dict[int, np.ndarray], name: str = "") -> Bundle:
    """Bundle of a module given by full action matrices; the graded pieces
    are the images of the vertical identities."""
    T = W.T
    bases, left = {}, {}
    for x in range(T.H.n_arrows):
        P = rho[int(T.vid[x])]
        cols = pivot_columns(P) if P.size else []
        B = P[:, cols]
        bases[x] = B
        if cols:
            rows = pivot_columns(B.T)
            left[x] = (rows, inverse(B[rows, :]))
    dims = {x: bases[x].shape[1] for x in bases}
    action = {}
    for A in range(T.n):
        t, b = int(T.t[A]), int(T.b[A])
        if not dims[t] or not dims[b]:
            action[A] = _zeros(dims[t], dims[b])
            continue
        image = rho[A].dot(bases[b])
        rows, L = left[t]
        coords = L.dot(image[rows, :])
        if not np.array_equal(bases[t].dot(coords), image):
            raise AssertionError(f"box {A} leaves the graded piece at {t}")
        action[A] = coords
    return Bundle(dims, action, name)


def unit_module_basis(W: WeakHopf) -> list[int]:
    """The boxes E of the core E; the elements 1_E form a basis of the target subalgebra."""
    return [A for A in range(W.n) if core.in_E(W.T, A)]


def unit_module(W: WeakHopf) -> dict[int, np.ndarray]:
    """Action A . z = eps_t(A z) on the target subalgebra, in the basis 1_E.
    The supports of the 1_E are disjoint and 1_E has coefficient 1 at E."""
    T = W.T
    Es = unit_module_basis(W)
    ones = [one_e(T, E) for E in Es]
    rho = {}
    for A in range(T.n):
        mat = _zeros(len(Es), len(Es))
        for j, u in enumerate(ones):
            z = W.eps_t(W.mul(W.basis(A), u))
            col = [z.coeff(E) for E in Es]
            if total(ones[i] * c for i, c in enumerate(col) if c) != z:
                raise AssertionError(f"eps_t of box {A} times 1_E is not in the span of the 1_E")
            mat[:, j] = col
        rho[A] = mat
    return rho


def unit_bundle(W: WeakHopf) -> Bundle:
    return bundle_from_module(W, unit_module(W), "unit")


def tensor_bundles(W: WeakHopf, V: Bundle, U: Bundle) -> Bundle:
    """Tensor product: the coproduct acts on the sum of all V_z (x) U_w and
    the vertical identities cut out the graded pieces."""
    T = W.T
    pairs = [(z, w) for z in sorted(V.dims) for w in sorted(U.dims) if V.dims[z] and U.dims[w]]
    offs, n = {}, 0
    for p in pairs:
        offs[p] = n
        n += V.dims[p[0]] * U.dims[p[1]]
    rho = {}
    for A in range(T.n):
        mat = _zeros(n, n)
        for (X, Y), c in W.comul_table[A].items():
            src = (int(T.b[X]), int(T.b[Y]))
            dst = (int(T.t[X]), int(T.t[Y]))
            if src not in offs or dst not in offs:
                continue
            block = np.kron(V.action[X], U.action[Y]) * c
            i, j = offs[dst], offs[src]
            mat[i:i + block.shape[0], j:j + block.shape[1]] += block
        rho[A] = mat
    return bundle_from_module(W, rho, f"{V.name} x {U.name}")


def dual_bundle(W: WeakHopf, V: Bundle) -> Bundle:
    """(V*)_x = (V_{x^{-1}})^*, a box acting by c_A times the transpose of its
    total inverse, c_A being the antipode coefficient."""
    if not W.has_antipode:
        raise Refused("the dual module needs an antipode")
    T = W.T
    inv = T.H.inverse
    dims = {x: V.dims[int(inv[x])] for x in V.dims}
    action = {A: V.action[int(T.tinv[A])].T * W.antipode_coeffs[A] for A in range(T.n)}
    return Bundle(dims, action, f"{V.name}*")


def double_dual_report(W: WeakHopf, V: Bundle) -> ValidationReport:
    """The action on V** is the action on V conjugated by the pivotal element."""
    from .wha import pivotal_element

    T = W.T
    rep = ValidationReport()
    VV = dual_bundle(W, dual_bundle(W, V))
    G = pivotal_element(W)
    for A in range(T.n):
        rep.count("double-dual")
        t, b = int(T.t[A]), int(T.b[A])
        want = V.action[A] * (G.coeff(int(T.vid[b])) / G.coeff(int(T.vid[t])))
        if not np.array_equal(VV.action[A], want):
            rep.fail("double-dual", A)
    return rep


def commutant_dim(W: WeakHopf, M: Bundle) -> int:
    """dim of the module endomorphisms: one block per arrow commuting with every box."""
    T = W.T
    offs, n = {}, 0
    for x in sorted(M.dims):
        offs[x] = n
        n += M.dims[x] ** 2
    rows = []
    for A in range(T.n):
        t, b = int(T.t[A]), int(T.b[A])
        dt, db = M.dims[t], M.dims[b]
        R = M.action[A]
        # R phi_b - phi_t R = 0, entrywise (i, j) with i < dt, j < db
        for i in range(dt):
            for j in range(db):
                row: dict[int, Fraction] = {}
                for k in range(db):
                    if R[i, k]:
                        key = offs[b] + k * db + j
                        row[key] = row.get(key, 0) + R[i, k]
                for k in range(dt):
                    if R[k, j]:
                        key = offs[t] + i * dt + k
                        row[key] = row.get(key, 0) - R[k, j]
                if any(row.values()):
                    rows.append(row)
    return n - (rank(sparse_matrix(rows, n)) if rows else 0)


@dataclass
class Decomposition:
    multiplicities: dict[tuple[int, int], int]      # (class, irrep index) -> multiplicity
    commutant_dim: int

    def check(self) -> bool:
        return sum(m * m for m in self.multiplicities.values()) == self.commutant_dim


def decompose(W: WeakHopf, M: Bundle, seed: int = 0, classes: list[ClassData] | None = None) -> Decomposition:
    """Multiplicities of the simples in a bundle: the piece at each basepoint
    is a module over the loop algebra, split by the central element."""
    classes = classes or vertical_classes(W.T)
    mult = {}
    for cls in classes:
        irr = loop_irreps(W, cls, seed)
        d = M.dims[cls.basepoint]
        if not d:
            continue
        mats = [np.array(M.action[A], dtype=complex) for A in cls.loops]
        Z = sum(c * R for c, R in zip(irr.central, mats))
        for v, m in _clusters(np.linalg.eigvals(Z)):
            k = min(range(len(irr.labels)), key=lambda i: abs(irr.labels[i].value - v))
            lab = irr.labels[k]
            if abs(lab.value - v) > 1e3 * EIG_TOL or m % lab.dim:
                raise AssertionError(f"eigenvalue {v} does not match an irreducible of class {cls.index}")
            mult[(cls.index, k)] = mult.get((cls.index, k), 0) + m // lab.dim
    dec = Decomposition(mult, commutant_dim(W, M))
    if not dec.check():
        raise AssertionError("multiplicities disagree with the commutant dimension")
    return dec


# -- fusion ------------------------------------------------------------------------------

@dataclass
class FusionVerdict:
    is_fusion: bool
    v_connected: bool                   # the vertical groupoid has one component
    one_e_per_bottom: bool              # at most one box of E over each horizontal arrow
    unit_simple: bool                   # the target subalgebra is a simple module (commutant of dim 1)
    witness: tuple = ()
    submodule: list[Element] | None = None

    @property
    def reasons(self) -> list[str]:
        out = []
        if not self.v_connected:
            out.append("the vertical groupoid is not connected")
        if not self.one_e_per_bottom:
            out.append("two boxes of the core E share a bottom")
        return out


def is_fusion(W: WeakHopf) -> FusionVerdict:
    T = W.T
    comps = connected_components(T.V)
    v_connected = len(comps) == 1
    by_bottom: dict[int, list[int]] = {}
    for E in unit_module_basis(W):
        by_bottom.setdefault(int(T.b[E]), []).append(E)
    clash = next((es for es in by_bottom.values() if len(es) > 1), None)
    rho = unit_module(W)
    unit_simple = commutant_dim(W, bundle_from_module(W, rho)) == 1
    verdict = FusionVerdict(v_connected and clash is None, v_connected, clash is None, unit_simple)
    if clash is not None:
        verdict.witness = tuple(clash[:2])
        verdict.submodule = _fiber_submodule(W, rho, by_bottom)
    elif not v_connected:
        verdict.witness = (comps[0][0], comps[1][0])
    if verdict.is_fusion != unit_simple:
        raise AssertionError("the fusion criterion disagrees with the simplicity of the unit module")
    return verdict


def _fiber_submodule(W: WeakHopf, rho: dict, by_bottom: dict) -> list[Element]:
    """Sums of 1_E over boxes of E sharing a bottom; they span a proper submodule."""
    T = W.T
    Es = unit_module_basis(W)
    pos = {E: i for i, E in enumerate(Es)}
    vecs = []
    for es in by_bottom.values():
        v = _zeros(len(Es), 1)
        for E in es:
            v[pos[E], 0] = Fraction(1)
        vecs.append(v)
    S = np.hstack(vecs)
    r = rank(as_domain(S))
    for A in range(T.n):
        if rank(as_domain(np.hstack([S, rho[A].dot(S)]))) != r:
            raise AssertionError(f"fiber sums are not stable under box {A}")
    if r >= len(Es):
        raise AssertionError("fiber sums span everything")
    return [total(one_e(T, Es[i]) for i in range(len(Es)) if v[i, 0]) for v in vecs]


# -- dimensions --------------------------------------------------------------------------

def weights_of(W: WeakHopf) -> ThetaWeights:
    """The point weights behind the coproduct, read off tau when not stored."""
    if W.theta is not None:
        return W.theta
    T = W.T
    vals: dict[int, Fraction] = {}
    for f in W.factorizations:
        for X, Y in f:
            P = int(T.bl[Y])
            v = Fraction(W.tau(X, Y))
            if vals.setdefault(P, v) != v:
                raise Refused("the coproduct weights do not come from point weights", (X, Y))
    return ThetaWeights(tuple(vals[P] for P in range(T.n_points)))


@dataclass
class SimpleDescriptor:
    cls: int
    irrep: int
    class_size: int
    loop_order: int
    irrep_dim: int
    class_sum: Fraction         # sum over the class of theta(l y)/theta(r y)
    qdim: Fraction
    fpdim: Fraction | None

    @property
    def total_dim(self) -> int:
        return self.class_size * self.irrep_dim


@dataclass
class Dimensions:
    simples: list[SimpleDescriptor]
    n_e: int
    global_dim: Fraction
    fp_global_dim: Fraction | None
    pseudo_unitary: bool
    integral: bool

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["class", "irrep", "class_size", "loop_order", "irrep_dim", "qdim", "fpdim"])
        for s in self.simples:
            w.writerow([s.cls, s.irrep, s.class_size, s.loop_order, s.irrep_dim, s.qdim,
                        "" if s.fpdim is None else s.fpdim])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "simples": [
                {"class": s.cls, "irrep": s.irrep, "class_size": s.class_size, "loop_order": s.loop_order,
                 "irrep_dim": s.irrep_dim, "qdim": str(s.qdim), "fpdim": None if s.fpdim is None else str(s.fpdim)}
                for s in self.simples
            ],
            "n_e": self.n_e,
            "global_dim": str(self.global_dim),
            "fp_global_dim": None if self.fp_global_dim is None else str(self.fp_global_dim),
            "pseudo_unitary": self.pseudo_unitary,
            "integral": self.integral,
        }


def dimensions(W: WeakHopf, seed: int = 0) -> Dimensions:
    verdict = is_fusion(W)
    if not verdict.is_fusion:
        raise Refused("not a fusion category: " + "; ".join(verdict.reasons), verdict.witness)
    T = W.T
    th = weights_of(W)
    n_e = len(unit_module_basis(W))
    classes = vertical_classes(T)
    simples = []
    for cls in classes:
        ratio = sum((th[int(T.H.source[y])] / th[int(T.H.target[y])] for y in cls.members), Fraction(0))
        for k, lab in enumerate(loop_irreps(W, cls, seed).labels):
            q = lab.dim * ratio / n_e
            simples.append(SimpleDescriptor(cls.index, k, len(cls.members), len(cls.loops), lab.dim,
                                            ratio, q, None))
    positive = all(s.class_sum > 0 for s in simples)
    for s in simples:
        s.fpdim = s.qdim if positive else None
    global_dim = sum((s.qdim ** 2 for s in simples), Fraction(0))
    fp_global = global_dim if positive else None
    canonical = th == ThetaWeights.canonical(T)
    integral = positive and all(s.fpdim.denominator == 1 for s in simples)
    if canonical and not integral:
        raise AssertionError("Frobenius-Perron dimensions are not integers for the canonical weights")
    pseudo_unitary = W.has_antipode and all(W.antipode_squared_scalar(A) > 0 for A in range(T.n))
    return Dimensions(simples, n_e, global_dim, fp_global, pseudo_unitary, integral)


def trace_qdim(W: WeakHopf, M: Bundle) -> Fraction:
    """tr_M(G) / #E computed on explicit matrices."""
    from .wha import pivotal_element

    n_e = len(unit_module_basis(W))
    G = M.element_matrix(W, pivotal_element(W)) if W.theta is not None else \
        M.element_matrix(W, Element((int(W.T.vid[x]), _ratio(W, x)) for x in range(W.T.H.n_arrows)))
    return sum((G[i, i] for i in range(G.shape[0])), Fraction(0)) / n_e


def _ratio(W: WeakHopf, x: int) -> Fraction:
    th = weights_of(W)
    return th[int(W.T.H.source[x])] / th[int(W.T.H.target[x])]
