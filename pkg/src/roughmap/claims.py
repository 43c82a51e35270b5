"""Claim registry and four-valued per-instance evaluation.

Each claim gets a verdict on a concrete instance (universes, a map, one or
two partitions, optionally a subset X):

    IllTyped  - the conclusion mentions an object outside its operation's
                domain, e.g. approximating over a non-equivalence relation
    Vacuous   - the hypothesis is false, so the claim says nothing here
    Holds     - hypothesis true, conclusion true
    Fails     - hypothesis true, conclusion false; carries a witness

Type checks run before the hypothesis, which runs before the conclusion;
an approximation over a non-equivalence is never formed, not even to test
a hypothesis.  Expected statuses record what is already established about
each claim: "refuted" (a counterexample is documented), "proved",
"ill-typed" (the statement itself misapplies an operation), or "open"
(no established status; search results are findings, not confirmations).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from . import kernels
from .errors import BadInstanceError
from .mappings import SurjMap
from .structures import Partition, Subset


class Outcome(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    ILL_TYPED = "ill-typed"
    VACUOUS = "vacuous"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: Optional[dict] = None
    reason: Optional[str] = None

    def __post_init__(self):
        if self.outcome is Outcome.FAILS and self.witness is None:
            raise ValueError("Fails needs a witness")
        if self.outcome is Outcome.ILL_TYPED and self.reason is None:
            raise ValueError("IllTyped needs a reason")


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    partitions: int  # 1 or 2
    needs_subset: bool
    map_constraint: str  # any | surjective | bijective
    expected_status: str  # refuted | proved | ill-typed | open
    note: str = ""


_OPEN_NOTE = "no established status; search results at bounded sizes are findings"

REGISTRY: dict[str, Claim] = {
    c.id: c
    for c in [
        Claim(
            "T31",
            "for surjective f and equivalence R, f(R) is an equivalence on V",
            1, False, "surjective", "open",
            "symmetry and reflexivity are established; transitivity is " + _OPEN_NOTE,
        ),
        Claim(
            "T31-refl",
            "f(R) is reflexive on V exactly when f is surjective",
            1, False, "any", "proved",
        ),
        Claim(
            "L31-1-fwd",
            "R1 ⊆ R2 implies f(R1) ⊆ f(R2)",
            2, False, "surjective", "refuted",
        ),
        Claim(
            "L31-1-bwd",
            "f(R1) ⊆ f(R2) implies R1 ⊆ R2",
            2, False, "surjective", "refuted",
        ),
        Claim(
            "L31-2-inc",
            "f(R1 ∩ R2) ⊆ f(R1) ∩ f(R2)",
            2, False, "surjective", "refuted",
        ),
        Claim(
            "L31-2-eq",
            "if [x]_f ⊆ [x]_R1 and [x]_f ⊆ [x]_R2 for all x, "
            "then f(R1 ∩ R2) = f(R1) ∩ f(R2)",
            2, False, "surjective", "open", _OPEN_NOTE,
        ),
        Claim(
            "L31-3-inc",
            "f(R1 ∪ R2) ⊇ f(R1) ∪ f(R2); "
            "well-typed only when R1 ∪ R2 is an equivalence",
            2, False, "surjective", "refuted",
        ),
        Claim(
            "L31-3-eq",
            "under the fiber condition of L31-2-eq, f(R1 ∪ R2) = "
            "f(R1) ∪ f(R2); well-typed only when R1 ∪ R2 is an equivalence",
            2, False, "surjective", "open", _OPEN_NOTE,
        ),
        Claim(
            "L31-3-join",
            "f(R1 ∨ R2) ⊇ f(R1) ∪ f(R2), with ∨ the partition join",
            2, False, "surjective", "open", _OPEN_NOTE,
        ),
        Claim(
            "L32",
            "under the fiber condition, f(R1) - f(R2) = f(R1 - R2)",
            2, False, "surjective", "ill-typed",
            "R1 - R2 is never reflexive, so f cannot be applied to it",
        ),
        Claim(
            "T41-1",
            "f(apr_R X) ⊆ apr_f(R) f(X)",
            1, True, "surjective", "refuted",
        ),
        Claim(
            "T41-2",
            "f(apr̄_R X) ⊇ apr̄_f(R) f(X)",
            1, True, "surjective", "refuted",
        ),
        Claim(
            "T42-1",
            "for bijective f, f(apr_R X) = apr_f(R) f(X)",
            1, True, "bijective", "proved",
        ),
        Claim(
            "T42-2",
            "for bijective f, f(apr̄_R X) = apr̄_f(R) f(X)",
            1, True, "bijective", "proved",
        ),
        Claim(
            "T43-1",
            "for definable X (apr_R X = apr̄_R X = X), apr_f(R) f(X) = f(X)",
            1, True, "surjective", "refuted",
        ),
        Claim(
            "T43-2",
            "for definable X (apr_R X = apr̄_R X = X), apr̄_f(R) f(X) = f(X)",
            1, True, "surjective", "refuted",
        ),
    ]
}


def get_claim(claim: Union[str, Claim]) -> Claim:
    if isinstance(claim, Claim):
        return claim
    try:
        return REGISTRY[claim]
    except KeyError:
        raise BadInstanceError(f"unknown claim id {claim!r}") from None


def list_claims() -> list[Claim]:
    return list(REGISTRY.values())


@dataclass(frozen=True)
class Instance:
    """Concrete data a claim is evaluated on."""

    f: SurjMap
    partitions: tuple[Partition, ...]
    x: Optional[Subset] = None

    def __post_init__(self):
        for p in self.partitions:
            if p.universe is not self.f.domain:
                raise BadInstanceError("partition not over the map's domain")
        if self.x is not None and self.x.universe is not self.f.domain:
            raise BadInstanceError("subset X not over the map's domain")


def check_shape(claim: Claim, inst: Instance) -> None:
    if len(inst.partitions) != claim.partitions:
        raise BadInstanceError(
            f"{claim.id} needs {claim.partitions} partition(s), got {len(inst.partitions)}"
        )
    if claim.needs_subset and inst.x is None:
        raise BadInstanceError(f"{claim.id} needs a subset X")
    if claim.map_constraint == "surjective" and not inst.f.surjective:
        raise BadInstanceError(f"{claim.id} needs a surjective map")
    if claim.map_constraint == "bijective" and not inst.f.bijective:
        raise BadInstanceError(f"{claim.id} needs a bijective map")


class GroupContext:
    """Shared per-(n, m, table) computations for one batch of instances.

    Image relations, their classifications, and block masks depend only on
    the map and one partition, so a search group iterating many partition
    and subset combinations caches them here.
    """

    __slots__ = (
        "n", "m", "table", "kern", "fibers", "surjective", "bijective",
        "_relmap", "_vblocks", "_ublocks", "_urows",
    )

    def __init__(self, n: int, m: int, table: tuple[int, ...]):
        self.n = n
        self.m = m
        self.table = tuple(table)
        self.kern = kernels.select(n, m)
        self.fibers = self.kern.fiber_masks(self.table, m)
        self.surjective = all(f != 0 for f in self.fibers)
        self.bijective = n == m and self.surjective
        self._relmap: dict = {}
        self._vblocks: dict = {}
        self._ublocks: dict = {}
        self._urows: dict = {}

    @classmethod
    def for_map(cls, f: SurjMap) -> "GroupContext":
        return cls(f.domain.size, f.codomain.size, f.table)

    def relmap(self, rgs) -> tuple[tuple[int, ...], int]:
        """(rows, classification flags) of the image relation of rgs."""
        hit = self._relmap.get(rgs)
        if hit is None:
            hit = self.kern.relmap_classified(rgs, self.table, self.fibers)
            self._relmap[rgs] = hit
        return hit

    def vblocks(self, rgs) -> Optional[tuple[int, ...]]:
        """Block masks of the image relation, or None when not an equivalence."""
        hit = self._vblocks.get(rgs, False)
        if hit is False:
            rows, flags = self.relmap(rgs)
            if flags == kernels.EQUIVALENCE:
                hit = self.kern.block_masks(self.kern.rows_to_rgs(rows))
            else:
                hit = None
            self._vblocks[rgs] = hit
        return hit

    def ublocks(self, rgs) -> tuple[int, ...]:
        hit = self._ublocks.get(rgs)
        if hit is None:
            hit = self.kern.block_masks(rgs)
            self._ublocks[rgs] = hit
        return hit

    def urows(self, rgs) -> tuple[int, ...]:
        """The partition itself as relation rows over U."""
        hit = self._urows.get(rgs)
        if hit is None:
            hit = self.kern.partition_rows(rgs)
            self._urows[rgs] = hit
        return hit


# ---------------------------------------------------------------- witnesses

def _pairs(rows) -> list[list[int]]:
    out = []
    for a, row in enumerate(rows):
        b = 0
        while row:
            if row & 1:
                out.append([a, b])
            row >>= 1
            b += 1
    return out


def _elts(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _first_extra_pair(left, right) -> list[int]:
    # first pair of left missing from right, row-major order
    for a, (lr, rr) in enumerate(zip(left, right)):
        extra = lr & ~rr
        if extra:
            return [a, (extra & -extra).bit_length() - 1]
    raise AssertionError("no extra pair")


def _rel_not_included(space, left_name, left, right_name, right) -> dict:
    return {
        "kind": "relation-not-included",
        "space": space,
        "pair": _first_extra_pair(left, right),
        "left_name": left_name,
        "right_name": right_name,
        "left": _pairs(left),
        "right": _pairs(right),
    }


def _rel_not_equal(space, left_name, left, right_name, right) -> dict:
    if any(lr & ~rr for lr, rr in zip(left, right)):
        pair, side = _first_extra_pair(left, right), "left-only"
    else:
        pair, side = _first_extra_pair(right, left), "right-only"
    return {
        "kind": "relation-not-equal",
        "space": space,
        "pair": pair,
        "side": side,
        "left_name": left_name,
        "right_name": right_name,
        "left": _pairs(left),
        "right": _pairs(right),
    }


def _set_not_included(left_name, left, right_name, right) -> dict:
    extra = left & ~right
    return {
        "kind": "subset-not-included",
        "space": "codomain",
        "element": (extra & -extra).bit_length() - 1,
        "left_name": left_name,
        "right_name": right_name,
        "left": _elts(left),
        "right": _elts(right),
    }


def _set_not_equal(left_name, left, right_name, right) -> dict:
    diff = left ^ right
    e = (diff & -diff).bit_length() - 1
    return {
        "kind": "subset-not-equal",
        "space": "codomain",
        "element": e,
        "side": "left-only" if (left >> e) & 1 else "right-only",
        "left_name": left_name,
        "right_name": right_name,
        "left": _elts(left),
        "right": _elts(right),
    }


def _not_equivalence(rows) -> dict:
    m = len(rows)
    for v in range(m):
        if not (rows[v] >> v) & 1:
            return {
                "kind": "not-equivalence",
                "condition": "reflexivity",
                "items": [v],
                "relation": _pairs(rows),
            }
    for a in range(m):
        for b in range(m):
            if (rows[a] >> b) & 1 and not (rows[b] >> a) & 1:
                return {
                    "kind": "not-equivalence",
                    "condition": "symmetry",
                    "items": [a, b],
                    "relation": _pairs(rows),
                }
    for a in range(m):
        for b in range(m):
            if (rows[a] >> b) & 1:
                missing = rows[b] & ~rows[a]
                if missing:
                    c = (missing & -missing).bit_length() - 1
                    return {
                        "kind": "not-equivalence",
                        "condition": "transitivity",
                        "items": [a, b, c],
                        "relation": _pairs(rows),
                    }
    raise AssertionError("relation is an equivalence")


# --------------------------------------------------------------- evaluators
#
# Each evaluator takes (ctx, rgs1, rgs2, xmask) and returns a Verdict.
# rgs2/xmask are None when the claim shape does not use them.

_HOLDS = Verdict(Outcome.HOLDS)
_VACUOUS = Verdict(Outcome.VACUOUS)


def _fails(witness: dict) -> Verdict:
    return Verdict(Outcome.FAILS, witness=witness)


def _ill(reason: str) -> Verdict:
    return Verdict(Outcome.ILL_TYPED, reason=reason)


def _eval_t31(ctx, rgs1, rgs2, xmask):
    rows, flags = ctx.relmap(rgs1)
    if flags == kernels.EQUIVALENCE:
        return _HOLDS
    return _fails(_not_equivalence(rows))


def _eval_t31_refl(ctx, rgs1, rgs2, xmask):
    rows, flags = ctx.relmap(rgs1)
    reflexive = bool(flags & kernels.REFLEXIVE)
    if reflexive == ctx.surjective:
        return _HOLDS
    if ctx.surjective:
        v = next(v for v in range(ctx.m) if not (rows[v] >> v) & 1)
    else:
        v = next(v for v in range(ctx.m) if ctx.fibers[v] == 0)
    return _fails(
        {
            "kind": "reflexivity-mismatch",
            "surjective": ctx.surjective,
            "reflexive": reflexive,
            "element": v,
            "relation": _pairs(rows),
        }
    )


def _eval_l311_fwd(ctx, rgs1, rgs2, xmask):
    if not ctx.kern.refines_rgs(rgs1, rgs2):
        return _VACUOUS
    left, _ = ctx.relmap(rgs1)
    right, _ = ctx.relmap(rgs2)
    if ctx.kern.rows_subset(left, right):
        return _HOLDS
    return _fails(_rel_not_included("codomain", "f(R1)", left, "f(R2)", right))


def _eval_l311_bwd(ctx, rgs1, rgs2, xmask):
    left, _ = ctx.relmap(rgs1)
    right, _ = ctx.relmap(rgs2)
    if not ctx.kern.rows_subset(left, right):
        return _VACUOUS
    if ctx.kern.refines_rgs(rgs1, rgs2):
        return _HOLDS
    return _fails(
        _rel_not_included("domain", "R1", ctx.urows(rgs1), "R2", ctx.urows(rgs2))
    )


def _eval_l312_inc(ctx, rgs1, rgs2, xmask):
    meet = ctx.kern.meet_rgs(rgs1, rgs2)
    left, _ = ctx.relmap(meet)
    right = ctx.kern.rows_and(ctx.relmap(rgs1)[0], ctx.relmap(rgs2)[0])
    if ctx.kern.rows_subset(left, right):
        return _HOLDS
    return _fails(
        _rel_not_included("codomain", "f(R1 ∩ R2)", left, "f(R1) ∩ f(R2)", right)
    )


def _fiber_cond_both(ctx, rgs1, rgs2) -> bool:
    return ctx.kern.fiber_condition(rgs1, ctx.table, ctx.fibers) and ctx.kern.fiber_condition(
        rgs2, ctx.table, ctx.fibers
    )


def _eval_l312_eq(ctx, rgs1, rgs2, xmask):
    if not _fiber_cond_both(ctx, rgs1, rgs2):
        return _VACUOUS
    meet = ctx.kern.meet_rgs(rgs1, rgs2)
    left, _ = ctx.relmap(meet)
    right = ctx.kern.rows_and(ctx.relmap(rgs1)[0], ctx.relmap(rgs2)[0])
    if left == right:
        return _HOLDS
    return _fails(
        _rel_not_equal("codomain", "f(R1 ∩ R2)", left, "f(R1) ∩ f(R2)", right)
    )


def _union_rgs(ctx, rgs1, rgs2):
    """rgs of R1 ∪ R2 when that union is an equivalence, else None."""
    union = ctx.kern.rows_or(ctx.urows(rgs1), ctx.urows(rgs2))
    if ctx.kern.classify_rows(union) != kernels.EQUIVALENCE:
        return None
    return ctx.kern.rows_to_rgs(union)


def _eval_l313_inc(ctx, rgs1, rgs2, xmask):
    u = _union_rgs(ctx, rgs1, rgs2)
    if u is None:
        return _ill("union-not-equivalence")
    left, _ = ctx.relmap(u)
    right = ctx.kern.rows_or(ctx.relmap(rgs1)[0], ctx.relmap(rgs2)[0])
    if ctx.kern.rows_subset(right, left):
        return _HOLDS
    return _fails(
        _rel_not_included("codomain", "f(R1) ∪ f(R2)", right, "f(R1 ∪ R2)", left)
    )


def _eval_l313_eq(ctx, rgs1, rgs2, xmask):
    u = _union_rgs(ctx, rgs1, rgs2)
    if u is None:
        return _ill("union-not-equivalence")
    if not _fiber_cond_both(ctx, rgs1, rgs2):
        return _VACUOUS
    left, _ = ctx.relmap(u)
    right = ctx.kern.rows_or(ctx.relmap(rgs1)[0], ctx.relmap(rgs2)[0])
    if left == right:
        return _HOLDS
    return _fails(
        _rel_not_equal("codomain", "f(R1 ∪ R2)", left, "f(R1) ∪ f(R2)", right)
    )


def _eval_l313_join(ctx, rgs1, rgs2, xmask):
    join = ctx.kern.join_rgs(rgs1, rgs2)
    left, _ = ctx.relmap(join)
    right = ctx.kern.rows_or(ctx.relmap(rgs1)[0], ctx.relmap(rgs2)[0])
    if ctx.kern.rows_subset(right, left):
        return _HOLDS
    return _fails(
        _rel_not_included("codomain", "f(R1) ∪ f(R2)", right, "f(R1 ∨ R2)", left)
    )


def _eval_l32(ctx, rgs1, rgs2, xmask):
    # R1 and R2 are reflexive, so R1 - R2 always loses the whole diagonal
    # and can never be an equivalence; f(R1 - R2) is not formable.
    return _ill("difference-not-reflexive")


def _approx_parts(ctx, rgs1, xmask):
    ublocks = ctx.ublocks(rgs1)
    lo_u, hi_u = ctx.kern.lower_upper_masks(ublocks, xmask)
    fx = ctx.kern.image_mask(ctx.table, xmask)
    return lo_u, hi_u, fx


def _eval_t41_1(ctx, rgs1, rgs2, xmask):
    vblocks = ctx.vblocks(rgs1)
    if vblocks is None:
        return _ill("relmap-not-equivalence")
    lo_u, _, fx = _approx_parts(ctx, rgs1, xmask)
    f_lo = ctx.kern.image_mask(ctx.table, lo_u)
    lo_v, _ = ctx.kern.lower_upper_masks(vblocks, fx)
    if not (f_lo & ~lo_v):
        return _HOLDS
    return _fails(_set_not_included("f(apr_R X)", f_lo, "apr_f(R) f(X)", lo_v))


def _eval_t41_2(ctx, rgs1, rgs2, xmask):
    vblocks = ctx.vblocks(rgs1)
    if vblocks is None:
        return _ill("relmap-not-equivalence")
    _, hi_u, fx = _approx_parts(ctx, rgs1, xmask)
    f_hi = ctx.kern.image_mask(ctx.table, hi_u)
    _, hi_v = ctx.kern.lower_upper_masks(vblocks, fx)
    if not (hi_v & ~f_hi):
        return _HOLDS
    return _fails(_set_not_included("apr̄_f(R) f(X)", hi_v, "f(apr̄_R X)", f_hi))


def _eval_t42_1(ctx, rgs1, rgs2, xmask):
    vblocks = ctx.vblocks(rgs1)
    if vblocks is None:
        return _ill("relmap-not-equivalence")
    lo_u, _, fx = _approx_parts(ctx, rgs1, xmask)
    f_lo = ctx.kern.image_mask(ctx.table, lo_u)
    lo_v, _ = ctx.kern.lower_upper_masks(vblocks, fx)
    if f_lo == lo_v:
        return _HOLDS
    return _fails(_set_not_equal("f(apr_R X)", f_lo, "apr_f(R) f(X)", lo_v))


def _eval_t42_2(ctx, rgs1, rgs2, xmask):
    vblocks = ctx.vblocks(rgs1)
    if vblocks is None:
        return _ill("relmap-not-equivalence")
    _, hi_u, fx = _approx_parts(ctx, rgs1, xmask)
    f_hi = ctx.kern.image_mask(ctx.table, hi_u)
    _, hi_v = ctx.kern.lower_upper_masks(vblocks, fx)
    if f_hi == hi_v:
        return _HOLDS
    return _fails(_set_not_equal("f(apr̄_R X)", f_hi, "apr̄_f(R) f(X)", hi_v))


def _eval_t43_1(ctx, rgs1, rgs2, xmask):
    vblocks = ctx.vblocks(rgs1)
    if vblocks is None:
        return _ill("relmap-not-equivalence")
    lo_u, hi_u, fx = _approx_parts(ctx, rgs1, xmask)
    if not (lo_u == xmask and hi_u == xmask):
        return _VACUOUS
    lo_v, _ = ctx.kern.lower_upper_masks(vblocks, fx)
    if lo_v == fx:
        return _HOLDS
    return _fails(_set_not_equal("apr_f(R) f(X)", lo_v, "f(X)", fx))


def _eval_t43_2(ctx, rgs1, rgs2, xmask):
    vblocks = ctx.vblocks(rgs1)
    if vblocks is None:
        return _ill("relmap-not-equivalence")
    lo_u, hi_u, fx = _approx_parts(ctx, rgs1, xmask)
    if not (lo_u == xmask and hi_u == xmask):
        return _VACUOUS
    _, hi_v = ctx.kern.lower_upper_masks(vblocks, fx)
    if hi_v == fx:
        return _HOLDS
    return _fails(_set_not_equal("apr̄_f(R) f(X)", hi_v, "f(X)", fx))


_EVALUATORS = {
    "T31": _eval_t31,
    "T31-refl": _eval_t31_refl,
    "L31-1-fwd": _eval_l311_fwd,
    "L31-1-bwd": _eval_l311_bwd,
    "L31-2-inc": _eval_l312_inc,
    "L31-2-eq": _eval_l312_eq,
    "L31-3-inc": _eval_l313_inc,
    "L31-3-eq": _eval_l313_eq,
    "L31-3-join": _eval_l313_join,
    "L32": _eval_l32,
    "T41-1": _eval_t41_1,
    "T41-2": _eval_t41_2,
    "T42-1": _eval_t42_1,
    "T42-2": _eval_t42_2,
    "T43-1": _eval_t43_1,
    "T43-2": _eval_t43_2,
}

assert set(_EVALUATORS) == set(REGISTRY)


def evaluate_raw(
    claim_id: str,
    ctx: GroupContext,
    rgs1: tuple[int, ...],
    rgs2: Optional[tuple[int, ...]] = None,
    xmask: Optional[int] = None,
) -> Verdict:
    """Evaluate on raw encodings; shape is the caller's responsibility."""
    return _EVALUATORS[claim_id](ctx, rgs1, rgs2, xmask)


def evaluate(claim: Union[str, Claim], inst: Instance) -> Verdict:
    """Verdict of a claim on an instance; raises BadInstance on shape mismatch."""
    claim = get_claim(claim)
    check_shape(claim, inst)
    ctx = GroupContext.for_map(inst.f)
    rgs1 = inst.partitions[0].rgs
    rgs2 = inst.partitions[1].rgs if len(inst.partitions) > 1 else None
    xmask = inst.x.mask if inst.x is not None else None
    return evaluate_raw(claim.id, ctx, rgs1, rgs2, xmask)
