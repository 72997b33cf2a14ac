"""Pointwise verification of concrete spinor-module constructions.

Every statement checked here is pointwise-algebraic, so exact rational
sampling verifies it without calculus: rational sphere points come from
stereographic projection, tangent vectors from exact orthogonal
projection, and all operator identities are checked entrywise over the
exact scalar field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .clifford import CliffordElement, Signature, volume
from .groups import FrameGroup, frame_group, twisted_adjoint
from .linalg import ExactMatrix
from .reps import (
    DIRAC,
    PAULI,
    Representation,
    SpinSpace,
    build_rep,
    commutant,
    spin_space,
)
from .scalars import ExactScalar, I, ONE, SQRT2, ZERO, sc

CE = CliffordElement


# ---------------------------------------------------------------------------
# rational sphere sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalSpherePoint:
    """Point of S^m with exactly unit rational coordinates."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if sum(c * c for c in self.coords) != 1:
            raise ValueError("sphere point does not have unit norm")

    @property
    def m(self) -> int:
        return len(self.coords) - 1

    def antipode(self) -> "RationalSpherePoint":
        return RationalSpherePoint(tuple(-c for c in self.coords))


@dataclass(frozen=True)
class TangentPair:
    """Sphere point with a rational tangent vector (exact orthogonality)."""

    point: RationalSpherePoint
    y: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.y) != len(self.point.coords):
            raise ValueError("tangent vector has wrong length")
        if sum(a * b for a, b in zip(self.point.coords, self.y)) != 0:
            raise ValueError("tangent vector is not orthogonal to the point")

    def antipode(self) -> "TangentPair":
        return TangentPair(self.point.antipode(), tuple(-c for c in self.y))

    def norm_squared(self) -> Fraction:
        return sum(c * c for c in self.y)


def stereographic(params: Sequence[Fraction]) -> RationalSpherePoint:
    """Inverse stereographic projection; zero parameters hit the north pole."""
    norm = Fraction(sum(p * p for p in params))
    den = 1 + norm
    coords = tuple(2 * Fraction(p) / den for p in params) + ((1 - norm) / den,)
    return RationalSpherePoint(coords)


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def sample_sphere_points(m: int, count: int, seed: int) -> List[RationalSpherePoint]:
    if m < 1:
        raise ValueError("sphere dimension must be positive")
    rng = random.Random(seed)
    return [stereographic([_random_fraction(rng) for _ in range(m)]) for _ in range(count)]


def sample_tangent_pairs(m: int, count: int, seed: int) -> List[TangentPair]:
    if m < 1:
        raise ValueError("sphere dimension must be positive")
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x = stereographic([_random_fraction(rng) for _ in range(m)])
        v = [_random_fraction(rng) for _ in range(m + 1)]
        dot = sum(a * b for a, b in zip(x.coords, v))
        y = tuple(b - dot * a for a, b in zip(x.coords, v))
        if all(c == 0 for c in y):
            continue
        out.append(TangentPair(x, y))
    return out


# ---------------------------------------------------------------------------
# sphere and projective-space Clifford maps
# ---------------------------------------------------------------------------


def sphere_representation(m: int) -> Representation:
    """Representation of Cl(m+1,0) whose even part carries the sphere map:
    Pauli for m even, Dirac for m odd."""
    sig = Signature(m + 1, 0)
    return build_rep(sig, PAULI if m % 2 == 0 else DIRAC)


def sphere_tau(m: int, pair: TangentPair, rep: Representation) -> ExactMatrix:
    """Clifford map of the round sphere: (x, y) -> i * theta(x y)."""
    if pair.point.m != m or rep.sig != Signature(m + 1, 0):
        raise ValueError("pair or representation does not match the sphere dimension")
    sig = rep.sig
    x = CE.vector(sig, [sc(c) for c in pair.point.coords])
    y = CE.vector(sig, [sc(c) for c in pair.y])
    return rep.image(x * y).scale(I)


def projective_tau(m: int, sign: int, pair: TangentPair, rep: Representation) -> ExactMatrix:
    """The two projective-space Clifford maps: +-i * theta(x y)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = sphere_tau(m, pair, rep)
    return out if sign > 0 else -out


# ---------------------------------------------------------------------------
# exterior-algebra module
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class ExteriorElement:
    """Element of the exterior algebra on m covectors, sparse over subsets."""

    m: int
    terms: Dict[int, ExactScalar]

    def __init__(self, m: int, terms: Optional[Dict[int, ExactScalar]] = None):
        self.m = m
        self.terms = {}
        if terms:
            for mask, coeff in terms.items():
                coeff = sc(coeff)
                if not coeff.is_zero():
                    self.terms[mask] = coeff

    @classmethod
    def basis_form(cls, m: int, mask: int) -> "ExteriorElement":
        return cls(m, {mask: ONE})

    @classmethod
    def zero(cls, m: int) -> "ExteriorElement":
        return cls(m)

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        out = dict(self.terms)
        for mask, coeff in other.terms.items():
            out[mask] = out.get(mask, ZERO) + coeff
        return ExteriorElement(self.m, out)

    def scale(self, factor) -> "ExteriorElement":
        factor = sc(factor)
        return ExteriorElement(self.m, {k: v * factor for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ExteriorElement) and self.m == other.m and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms


def _wedge_basis(mask: int, i: int) -> Tuple[int, int]:
    """Insert covector i into the sorted subset; returns (mask, sign) or (0, 0)."""
    if mask >> i & 1:
        return 0, 0
    before = (mask & ((1 << i) - 1)).bit_count()
    return mask | (1 << i), -1 if before & 1 else 1


def _contract_basis(mask: int, i: int) -> Tuple[int, int]:
    """Pair slot i of the sorted subset; returns (mask, sign) or (0, 0)."""
    if not mask >> i & 1:
        return 0, 0
    before = (mask & ((1 << i) - 1)).bit_count()
    return mask & ~(1 << i), -1 if before & 1 else 1


def exterior_tau(v: Sequence, omega: ExteriorElement, h: Signature) -> ExteriorElement:
    """Clifford action on forms: contraction plus metric wedge.

    tau(v) w = v . w + g(v) ^ w  squares to h(v) times the identity.
    """
    if len(v) != h.m or omega.m != h.m:
        raise ValueError("dimension mismatch")
    coeffs = [sc(c) for c in v]
    acc: Dict[int, ExactScalar] = {}
    for mask, c in omega.terms.items():
        for i in range(h.m):
            vi = coeffs[i]
            if vi.is_zero():
                continue
            cmask, csign = _contract_basis(mask, i)
            if csign:
                term = vi * c if csign > 0 else -(vi * c)
                acc[cmask] = acc.get(cmask, ZERO) + term
            wmask, wsign = _wedge_basis(mask, i)
            if wsign:
                term = vi * c * sc(h.h(i))
                acc[wmask] = acc.get(wmask, ZERO) + (term if wsign > 0 else -term)
    return ExteriorElement(h.m, acc)


def hermitean_tau(n: Sequence, omega: ExteriorElement) -> ExteriorElement:
    """Clifford action of n + conj(n) on the exterior algebra of the
    i-eigenspace model: sqrt2 * (conjugate contraction + wedge)."""
    d = omega.m
    if len(n) != d:
        raise ValueError("dimension mismatch")
    coeffs = [sc(c) for c in n]
    for c in coeffs:
        if not c.is_gaussian():
            raise ValueError("eigenspace coordinates must be complex rationals")
    acc: Dict[int, ExactScalar] = {}
    for mask, c in omega.terms.items():
        for i in range(d):
            ai = coeffs[i]
            if ai.is_zero():
                continue
            cmask, csign = _contract_basis(mask, i)
            if csign:
                term = ai.conjugate() * c
                acc[cmask] = acc.get(cmask, ZERO) + (term if csign > 0 else -term)
            wmask, wsign = _wedge_basis(mask, i)
            if wsign:
                term = ai * c
                acc[wmask] = acc.get(wmask, ZERO) + (term if wsign > 0 else -term)
    return ExteriorElement(d, acc).scale(SQRT2)


def hermitean_h_value(n: Sequence) -> ExactScalar:
    """Quadratic form of the real vector n + conj(n): 2 * |n|^2."""
    acc = ZERO
    for c in n:
        c = sc(c)
        acc = acc + c.conjugate() * c
    return acc + acc


# ---------------------------------------------------------------------------
# the projective quadric (S^1 x S^2)/Z2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadricPoint:
    """Sample of the quadric with tangent data: circle and sphere parts."""

    x: TangentPair  # point/tangent on S^1 in R^2
    y: TangentPair  # point/tangent on S^2 in R^3

    def antipode(self) -> "QuadricPoint":
        return QuadricPoint(self.x.antipode(), self.y.antipode())


_SIG2 = Signature(2, 0)
_SIG3 = Signature(3, 0)


@lru_cache(maxsize=None)
def _theta2() -> Representation:
    return build_rep(_SIG2, DIRAC)


@lru_cache(maxsize=None)
def _sigma3() -> Representation:
    return build_rep(_SIG3, PAULI)


def quadric_tau(p: QuadricPoint) -> ExactMatrix:
    """Clifford action on S1 (x) S2 for the product metric.

    Assembled as i*(theta(xi) (x) sigma(y*omega) + 1 (x) sigma(y*eta));
    the overall i normalises the squares to +g, keeping the map
    antipodally invariant since both displayed factors are.
    """
    theta, sigma = _theta2(), _sigma3()
    xi = CE.vector(_SIG2, [sc(c) for c in p.x.y])
    y = CE.vector(_SIG3, [sc(c) for c in p.y.point.coords])
    t = CE.vector(_SIG3, [sc(c) for c in p.y.y])
    omega = volume(_SIG3).eta
    first = ExactMatrix.kron(theta.image(xi), sigma.image(y * omega))
    second = ExactMatrix.kron(ExactMatrix.identity(2), sigma.image(y * t))
    return (first + second).scale(I)


def quadric_varpi(p: QuadricPoint) -> ExactMatrix:
    """Involution splitting the quadric module: theta(x) (x) -i*sigma(y*omega).

    The -i factor normalises sigma of the odd vector y out of the even
    image sigma(y*omega); the product of the two odd slots is antipodally
    invariant and anticommutes with the Clifford action.
    """
    theta, sigma = _theta2(), _sigma3()
    x = CE.vector(_SIG2, [sc(c) for c in p.x.point.coords])
    y = CE.vector(_SIG3, [sc(c) for c in p.y.point.coords])
    omega = volume(_SIG3).eta
    return ExactMatrix.kron(theta.image(x), sigma.image(y * omega).scale(-I))


def sample_quadric_points(count: int, seed: int) -> List[QuadricPoint]:
    xs = sample_tangent_pairs(1, count, seed)
    ys = sample_tangent_pairs(2, count, seed + 1)
    return [QuadricPoint(x, y) for x, y in zip(xs, ys)]


@dataclass
class SampleReport:
    name: str
    samples: int
    failures: List[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def quadric_example_check(samples: Sequence[QuadricPoint]) -> SampleReport:
    """Exact pointwise checks: involution, anticommutation, Clifford
    property for the product metric, antipodal invariance, projector swap."""
    failures = []
    for idx, p in enumerate(samples):
        tau = quadric_tau(p)
        varpi = quadric_varpi(p)
        ident = ExactMatrix.identity(4)
        if varpi * varpi != ident:
            failures.append(f"sample {idx}: varpi is not involutive")
        if not varpi.anticommutes_with(tau):
            failures.append(f"sample {idx}: varpi does not anticommute with tau")
        g = sc(p.x.norm_squared() + p.y.norm_squared())
        if tau * tau != ident.scale(g):
            failures.append(f"sample {idx}: Clifford property fails")
        anti = p.antipode()
        if quadric_tau(anti) != tau or quadric_varpi(anti) != varpi:
            failures.append(f"sample {idx}: not antipodally invariant")
        half = ExactScalar(1) / 2
        p_plus = (ident + varpi).scale(half)
        p_minus = (ident - varpi).scale(half)
        if tau * p_plus != p_minus * tau:
            failures.append(f"sample {idx}: projectors not swapped by tau")
    return SampleReport("quadric", len(samples), failures)


# ---------------------------------------------------------------------------
# associated-bundle well-definedness
# ---------------------------------------------------------------------------


def associated_tau_welldefined(ss: SpinSpace, group: Optional[FrameGroup] = None) -> SampleReport:
    """Check the twisting identity making the associated Clifford action
    well defined: Gamma * Ad~(a^-1)(v) * a^-1 = a^-1 * Gamma * v for every
    frame-group element a and frame vector v.  Also confirms the negative
    control: dropping Gamma breaks the identity for some odd a.
    """
    group = group or frame_group(ss.sig)
    failures = []
    for a in group.elements:
        inv = a.inverse()
        for i, v in enumerate(ss.frame):
            lhs = ss.gamma * twisted_adjoint(ss, inv, v) * inv
            rhs = inv * ss.gamma * v
            if lhs != rhs:
                failures.append(f"element {group.index_of(a)}, vector e{i + 1}")
    control_broken = False
    for a in group.elements:
        inv = a.inverse()
        for v in ss.frame:
            if twisted_adjoint(ss, inv, v) * inv != inv * v:
                control_broken = True
                break
        if control_broken:
            break
    if not control_broken:
        failures.append("negative control: identity held even without Gamma")
    return SampleReport(f"associated-{ss.sig}", group.order * len(ss.frame), failures)


# ---------------------------------------------------------------------------
# spin-space morphisms
# ---------------------------------------------------------------------------


def _signed_permutation_isometries(ss1: SpinSpace, ss2: SpinSpace):
    """Candidate frame isometries g(e_i) = +-e_pi(i), square-compatible,
    identity first."""
    m = ss1.sig.m
    h1 = [ss1.sig.h(i) for i in range(m)]
    h2 = [ss2.sig.h(i) for i in range(m)]
    for perm in permutations(range(m)):
        if any(h2[perm[i]] != h1[i] for i in range(m)):
            continue
        for signs in range(1 << m):
            yield [
                ss2.frame[perm[i]].scale(sc(-1 if signs >> i & 1 else 1))
                for i in range(m)
            ]


def _intertwiner_to_targets(
    frame: Sequence[ExactMatrix], targets: Sequence[ExactMatrix]
) -> Optional[ExactMatrix]:
    from .reps import _first_invertible, _intertwiner_space

    basis = _intertwiner_space(frame, targets)
    if not basis:
        return None
    return _first_invertible(basis)


def spin_space_morphisms(
    ss1: SpinSpace,
    ss2: SpinSpace,
    extra_isometries: Sequence[Sequence[ExactMatrix]] = (),
) -> Optional[ExactMatrix]:
    """Invertible a with a V1 a^-1 = V2 realising a frame isometry.

    Searches signed permutation isometries first (identity leading), then
    caller-supplied target frames; returns the first conjugator found.
    """
    if ss1.dim != ss2.dim or ss1.sig.m != ss2.sig.m:
        return None
    candidates = list(_signed_permutation_isometries(ss1, ss2))
    candidates.extend([list(t) for t in extra_isometries])
    for targets in candidates:
        found = _intertwiner_to_targets(ss1.frame, targets)
        if found is not None:
            return found
    return None
