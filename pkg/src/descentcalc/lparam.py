"""Formal L-parameters: simple summands rho (x) mu_b, component groups and characters."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .hermitian import GroupDesc
from .localfield import QuadExtDesc, SquareClass, norm_class_group, square_classes

SIGN = {"orthogonal": 1, "symplectic": -1, "conj-orth": 1, "conj-symp": -1, "nsd": 0}
SELF_DUAL = {1: "orthogonal", -1: "symplectic"}
CONJ_DUAL = {1: "conj-orth", -1: "conj-symp"}

Key = tuple[str, int]  # (rho id, b)


@dataclass(frozen=True)
class FormalIrr:
    id: str
    dim: int
    duality: str
    det: SquareClass | None = None
    partner: str | None = None  # dual (E = F) or conjugate-dual (E != F) of an nsd member
    dual: str | None = None     # rho^vee, used by unitary contragredients

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("irreducibles have positive dimension")
        if self.duality == "non-self-dual":
            object.__setattr__(self, "duality", "nsd")
        if self.duality not in SIGN:
            raise ValueError(f"unknown duality {self.duality}")
        if self.duality == "symplectic" and self.dim % 2:
            raise ValueError(f"{self.id}: symplectic irreducibles have even dimension")
        if self.duality == "nsd" and self.partner is None:
            raise ValueError(f"{self.id}: non-self-dual members need a partner")

    @property
    def sign(self) -> int:
        return SIGN[self.duality]

    def to_json(self) -> dict:
        d = {"id": self.id, "dim": self.dim, "duality": self.duality}
        if self.det is not None:
            d["det"] = self.det.tag
        if self.partner is not None:
            d["partner"] = self.partner
        if self.dual is not None:
            d["dual"] = self.dual
        return d


@dataclass
class Alphabet:
    ext: QuadExtDesc
    members: dict[str, FormalIrr]
    twists: dict[tuple[str, int], str] = field(default_factory=dict)  # (id, z.rep) -> id
    pad: tuple[str, str] | None = None

    def __getitem__(self, rid: str) -> FormalIrr:
        try:
            return self.members[rid]
        except KeyError:
            raise KeyError(f"unknown irreducible {rid!r}") from None

    @property
    def trivial_id(self) -> str | None:
        for r in self.members.values():
            if r.duality == "orthogonal" and r.dim == 1 and r.det is not None and r.det.is_one:
                return r.id
        return None

    def quadratic_char(self, c: SquareClass) -> str | None:
        for r in self.members.values():
            if r.duality == "orthogonal" and r.dim == 1 and r.det == c:
                return r.id
        return None

    def twist_irr(self, rid: str, z: SquareClass) -> str:
        if z.is_one:
            return rid
        if not self.ext.split:
            raise ValueError("twists by quadratic characters are used only when E = F")
        t = self.twists.get((rid, z.rep), rid)  # unlisted twists fix rho
        if t not in self.members:
            raise ValueError(f"twist of {rid} by {z.tag} leaves the alphabet")
        return t

    def dual_of(self, rid: str) -> str:
        r = self[rid]
        if r.dual is not None:
            return r.dual
        if r.duality == "nsd":
            return r.partner
        return rid

    def validate(self) -> list[str]:
        out = []
        F = self.ext.base
        for r in self.members.values():
            if self.ext.split and r.duality.startswith("conj"):
                out.append(f"{r.id}: conjugate duality with E = F")
            if not self.ext.split and r.duality in ("orthogonal", "symplectic"):
                out.append(f"{r.id}: plain self-duality with E != F")
            if self.ext.split and r.det is None:
                out.append(f"{r.id}: missing determinant")
            if r.duality == "symplectic" and r.det is not None and not r.det.is_one:
                out.append(f"{r.id}: symplectic with nontrivial det")
            if r.duality == "nsd":
                p = self.members.get(r.partner)
                if p is None or p.partner != r.id or p.dim != r.dim:
                    out.append(f"{r.id}: partner {r.partner} missing or inconsistent")
                elif self.ext.split and p.det != r.det:
                    out.append(f"{r.id}: dual pair with different det classes")
            d = self.dual_of(r.id)
            if d not in self.members or self.dual_of(d) != r.id:
                out.append(f"{r.id}: dual map is not an involution")
        if self.ext.split:
            for r in self.members.values():
                for z in square_classes(F):
                    try:
                        t = self.twist_irr(r.id, z)
                    except ValueError as e:
                        out.append(str(e))
                        continue
                    tr = self.members.get(t)
                    if tr is None:
                        out.append(f"twist {t} missing")
                        continue
                    if tr.dim != r.dim or tr.duality != r.duality:
                        out.append(f"twist of {r.id} by {z.tag} changes type")
                    # det classes of non-self-dual members are formal and not twisted
                    if r.sign and r.det is not None and tr.det != r.det * z ** r.dim:
                        out.append(f"det of twist of {r.id} by {z.tag}")
                    for w in square_classes(F):
                        try:
                            if self.twist_irr(t, w) != self.twist_irr(r.id, z * w):
                                out.append(f"twists of {r.id} do not compose")
                        except ValueError:
                            pass
        if self.pad is not None:
            a, b = self.pad
            if a not in self.members or self[a].duality != "nsd" or self[a].partner != b:
                out.append("pad pair is not a dual nsd pair")
            elif self.ext.split and not self[a].det.is_one:
                out.append("pad pair needs trivial det class")
        return out

    def to_json(self) -> dict:
        F = self.ext.base
        return {
            "members": [r.to_json() for r in self.members.values()],
            "twists": [[r, F.cls(z).tag, t] for (r, z), t in sorted(self.twists.items())],
            "pad": list(self.pad) if self.pad else None,
        }

    @classmethod
    def from_json(cls, ext: QuadExtDesc, d) -> "Alphabet":
        F = ext.base
        if isinstance(d, list):
            d = {"members": d}
        members = {}
        for m in d["members"]:
            det = F.cls(str(m["det"])) if m.get("det") is not None else None
            members[m["id"]] = FormalIrr(m["id"], int(m["dim"]), m["duality"], det,
                                         m.get("partner"), m.get("dual"))
        twists = {(r, F.cls(str(z)).rep): t for r, z, t in d.get("twists", [])}
        pad = tuple(d["pad"]) if d.get("pad") else None
        return cls(ext, members, twists, pad)


# ---------------------------------------------------------------- parameters

def param_dim(family: str, n: int) -> int:
    """Dimension of an L-parameter of the group with an n-dimensional space."""
    if n == 0:
        return 1 if family == "Sp" else 0  # Sp_0 has the trivial character as parameter
    return {"SO_odd": n - 1, "SO_even": n, "Sp": n + 1, "Mp": n, "U": n}[family]


def param_sign(family: str, n: int) -> int:
    """+1 orthogonal, -1 symplectic; for U the default sign (-1)^(n-1)."""
    if family == "U":
        return 1 if n % 2 else -1
    return {"SO_odd": -1, "SO_even": 1, "Sp": 1, "Mp": -1}[family]


def summand_sign(alpha: Alphabet, key: Key) -> int:
    r = alpha[key[0]]
    return r.sign * (1 if key[1] % 2 else -1) if r.sign else 0


def summand_duality(rho: FormalIrr, b: int) -> str:
    """Type of rho (x) mu_b: mu_b is orthogonal for b odd and symplectic for b even."""
    if rho.sign == 0:
        return "nsd"
    s = rho.sign * (1 if b % 2 else -1)
    return CONJ_DUAL[s] if rho.duality.startswith("conj") else SELF_DUAL[s]


def summand_dim(alpha: Alphabet, key: Key) -> int:
    return alpha[key[0]].dim * key[1]


def summand_det(alpha: Alphabet, key: Key) -> SquareClass:
    """det(rho (x) mu_b) modeled as det(rho)^b."""
    return alpha[key[0]].det ** key[1]


def key_str(key: Key) -> str:
    return f"{key[0]}⊗μ{key[1]}"


def parse_key(s: str) -> Key:
    rho, b = s.rsplit("⊗μ", 1)
    return rho, int(b)


@dataclass(frozen=True)
class Parameter:
    summands: tuple[tuple[str, int, int], ...]  # sorted (rho, b, multiplicity)
    group: GroupDesc
    sign: int
    generic: bool = True

    def mult(self, key: Key) -> int:
        for r, b, m in self.summands:
            if (r, b) == key:
                return m
        return 0

    def keys(self) -> list[Key]:
        return [(r, b) for r, b, _ in self.summands]

    def to_json(self) -> dict:
        return {"summands": [list(s) for s in self.summands], "sign": self.sign}


def normalize_summands(items: Iterable) -> tuple[tuple[str, int, int], ...]:
    acc: dict[Key, int] = {}
    for it in items:
        r, b, m = (it[0], int(it[1]), int(it[2]) if len(it) > 2 else 1)
        if b < 1 or m < 0:
            raise ValueError("b must be >= 1 and multiplicities >= 0")
        acc[(r, b)] = acc.get((r, b), 0) + m
    return tuple(sorted((r, b, m) for (r, b), m in acc.items() if m > 0))


def total_dim(alpha: Alphabet, summands) -> int:
    return sum(alpha[r].dim * b * m for r, b, m in summands)


def total_det(alpha: Alphabet, summands) -> SquareClass:
    d = alpha.ext.base.cls(1)
    for r, b, m in summands:
        if alpha[r].det is not None:
            d = d * summand_det(alpha, (r, b)) ** m
    return d


def parameter_violations(alpha: Alphabet, phi: Parameter) -> list[str]:
    out = []
    G = phi.group
    want = param_dim(G.family, G.dim)
    got = total_dim(alpha, phi.summands)
    if got != want and not (G.trivial and got == 0):
        out.append(f"dimension {got} != {want} for {G.label()}")
    if G.family != "U" and phi.sign != param_sign(G.family, G.dim):
        out.append("sign does not match the family")
    mults = {(r, b): m for r, b, m in phi.summands}
    for (r, b), m in mults.items():
        rho = alpha[r]
        if rho.sign and alpha.ext.split == rho.duality.startswith("conj"):
            out.append(f"{r}: duality inconsistent with the extension")
        s = summand_sign(alpha, (r, b))
        if s == 0:
            if mults.get((rho.partner, b), 0) != m:
                out.append(f"{r}⊗μ{b}: non-self-dual summand without its partner")
        elif s != phi.sign and m % 2:
            out.append(f"{r}⊗μ{b}: wrong-type summand with odd multiplicity")
    if alpha.ext.split and got == want and want:
        det = total_det(alpha, phi.summands)
        if G.family in ("Sp", "SO_odd", "Mp") and not det.is_one:
            out.append("parameter must have trivial determinant")
        if G.family == "SO_even" and G.space is not None and det != G.space.disc:
            out.append("det of the parameter does not match disc(V)")
    return out


def make_parameter(alpha: Alphabet, group: GroupDesc, summands, sign: int | None = None,
                   generic: bool = True) -> Parameter:
    if sign is None:
        sign = param_sign(group.family, group.dim)
    phi = Parameter(normalize_summands(summands), group, sign, generic)
    bad = parameter_violations(alpha, phi)
    if bad:
        raise ValueError("; ".join(bad))
    return phi


def classify_summands(alpha: Alphabet, phi: Parameter) -> tuple[list[Key], list[Key], list[Key]]:
    gp, bp, nsd = [], [], []
    for r, b, _ in phi.summands:
        s = summand_sign(alpha, (r, b))
        (nsd if s == 0 else gp if s == phi.sign else bp).append((r, b))
    return gp, bp, nsd


def is_discrete(alpha: Alphabet, phi: Parameter) -> bool:
    _, bp, nsd = classify_summands(alpha, phi)
    return not bp and not nsd and all(m == 1 for _, _, m in phi.summands)


def is_tempered(alpha: Alphabet, phi: Parameter) -> bool:
    """Formal parameters carry no exponents, so they are always tempered."""
    return True


# ---------------------------------------------------------------- component groups

@dataclass(frozen=True)
class ComponentGroup:
    basis: tuple[Key, ...]
    dims: tuple[int, ...]
    constraint: bool

    @property
    def rank(self) -> int:
        return len(self.basis)

    def order(self) -> int:
        k = len(self.basis)
        return 2 ** (k - 1) if self.constraint else 2**k

    def contains(self, e: tuple[int, ...]) -> bool:
        return not self.constraint or sum(x * d for x, d in zip(e, self.dims)) % 2 == 0

    def elements(self) -> list[tuple[int, ...]]:
        return [e for e in product((0, 1), repeat=len(self.basis)) if self.contains(e)]

    def parity(self) -> tuple[int, ...]:
        return tuple(-1 if d % 2 else 1 for d in self.dims)

    def canonical(self, chi: "CharacterVec") -> "CharacterVec":
        if chi.basis != self.basis:
            raise ValueError("character on another basis")
        if not self.constraint:
            return chi
        j = next(i for i, d in enumerate(self.dims) if d % 2)
        if chi.values[j] == -1:
            return chi * CharacterVec(self.basis, self.parity())
        return chi

    def same(self, a: "CharacterVec", b: "CharacterVec") -> bool:
        return self.canonical(a) == self.canonical(b)

    def trivial(self) -> "CharacterVec":
        return CharacterVec(self.basis, (1,) * len(self.basis))

    def characters(self) -> list["CharacterVec"]:
        """One canonical representative per character of S_phi."""
        seen = []
        for v in product((1, -1), repeat=len(self.basis)):
            c = self.canonical(CharacterVec(self.basis, v))
            if c not in seen:
                seen.append(c)
        return seen

    def evaluate(self, chi: "CharacterVec", e) -> int:
        out = 1
        for x, v in zip(e, chi.values):
            if x:
                out *= v
        return out


@dataclass(frozen=True)
class CharacterVec:
    basis: tuple[Key, ...]
    values: tuple[int, ...]

    def __mul__(self, other: "CharacterVec") -> "CharacterVec":
        if other.basis != self.basis:
            raise ValueError("characters on different bases")
        return CharacterVec(self.basis, tuple(a * b for a, b in zip(self.values, other.values)))

    def as_dict(self) -> dict:
        return {key_str(k): v for k, v in zip(self.basis, self.values)}

    def transport(self, mapping: dict[Key, Key], basis: tuple[Key, ...]) -> "CharacterVec":
        """Move to another basis through a key bijection old -> new."""
        val = dict(zip(self.basis, self.values))
        inv = {v: k for k, v in mapping.items()}
        return CharacterVec(basis, tuple(val[inv[k]] for k in basis))

    @classmethod
    def from_dict(cls, basis, d: dict) -> "CharacterVec":
        return cls(tuple(basis), tuple(int(d.get(key_str(k), 1)) for k in basis))


def component_group(alpha: Alphabet, phi: Parameter) -> ComponentGroup:
    gp, _, _ = classify_summands(alpha, phi)
    dims = tuple(summand_dim(alpha, k) for k in gp)
    G = phi.group
    # the parity condition cuts S_phi exactly when some good-parity summand is odd-dimensional;
    # for Sp that is every nonzero parameter
    active = (alpha.ext.split and phi.sign == 1 and G.family in ("Sp", "SO_even")
              and any(d % 2 for d in dims))
    return ComponentGroup(tuple(gp), dims, active)


@dataclass(frozen=True)
class EnhancedParameter:
    phi: Parameter
    mu: CharacterVec

    def key(self) -> tuple:
        return (self.phi.summands, self.phi.sign, self.mu.values)

    def to_json(self) -> dict:
        d = self.phi.to_json()
        d["group"] = self.phi.group.to_json()
        d["mu"] = {"chi": self.mu.as_dict()}
        return d


def enhanced(alpha: Alphabet, phi: Parameter, mu: CharacterVec | dict | None = None) -> EnhancedParameter:
    S = component_group(alpha, phi)
    if mu is None:
        mu = S.trivial()
    elif isinstance(mu, dict):
        mu = CharacterVec.from_dict(S.basis, mu)
    return EnhancedParameter(phi, S.canonical(mu))


# ---------------------------------------------------------------- twists and duals

def twist(alpha: Alphabet, phi: Parameter, z: SquareClass) -> tuple[Parameter, dict[Key, Key]]:
    """phi (x) chi_z and the key map identifying the component groups."""
    mapping = {(r, b): (alpha.twist_irr(r, z), b) for r, b, _ in phi.summands}
    new = Parameter(normalize_summands((mapping[(r, b)][0], b, m) for r, b, m in phi.summands),
                    phi.group, phi.sign, phi.generic)
    return new, mapping


def dual_parameter(alpha: Alphabet, phi: Parameter) -> tuple[Parameter, dict[Key, Key]]:
    mapping = {(r, b): (alpha.dual_of(r), b) for r, b, _ in phi.summands}
    new = Parameter(normalize_summands((mapping[(r, b)][0], b, m) for r, b, m in phi.summands),
                    phi.group, phi.sign, phi.generic)
    return new, mapping


def _move(alpha, chi: CharacterVec, mapping, new_phi) -> CharacterVec:
    S = component_group(alpha, new_phi)
    return S.canonical(chi.transport({k: mapping[k] for k in chi.basis}, S.basis))


def contragredient_enhanced(ctx, ep: EnhancedParameter) -> EnhancedParameter:
    """Contragredient case table: SO fixed, Sp twists by eta_{-1}, Mp also twists phi by -1,
    U dualizes phi and twists by eta_{-1} exactly when n is even."""
    from .ggp import eta

    alpha = ctx.alphabet
    phi, mu = ep.phi, ep.mu
    fam = phi.group.family
    m1 = alpha.ext.base.cls(-1)
    S = component_group(alpha, phi)
    if fam in ("SO_odd", "SO_even"):
        return ep
    if fam == "Sp":
        return EnhancedParameter(phi, S.canonical(mu * eta(ctx, phi, m1)))
    if fam == "Mp":
        new, mp = twist(alpha, phi, m1)
        return EnhancedParameter(new, _move(alpha, mu * eta(ctx, phi, m1), mp, new))
    new, mp = dual_parameter(alpha, phi)
    chi = mu * eta(ctx, phi, m1) if phi.group.dim % 2 == 0 else mu
    return EnhancedParameter(new, _move(alpha, chi, mp, new))


def z_orbit(ctx, ep: EnhancedParameter) -> set[tuple[int, ...]]:
    from .ggp import eta

    S = component_group(ctx.alphabet, ep.phi)
    return {S.canonical(ep.mu * eta(ctx, ep.phi, z)).values for z in norm_class_group(ctx.ext)}
