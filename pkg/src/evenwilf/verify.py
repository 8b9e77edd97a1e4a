"""Named, reproducible checks for the proved and conjectured equivalences.

Each check is registered under a stable kebab-case name, runs a deterministic
exhaustive search at a stated horizon, and returns a CheckReport.  Statuses:

* "verified" is reserved for statements with actual proofs (the rotation-map
  theorem, the sign-symmetry lemmas); the machine check is confirmation at
  the horizon, and a failure would mean an implementation bug;
* conjectures can only ever reach "exhausted-no-counterexample";
* "refuted" carries a witness, and a witness is only reported after the
  relevant counts have been reproduced by the naive filter oracle -- if the
  two routes disagree, the run aborts loudly instead of reporting.

Horizons here are desk-scale on purpose (a 6-box where the source data used
a 9-box, n <= 10 where it used 11); every report embeds its horizon so a
result is never quietly over-claimed.
"""
from __future__ import annotations

import inspect
import itertools
import time
from dataclasses import dataclass

from . import __version__
from .counting import CountTriple, count_avoiders, count_avoiders_shape
from .bijection import backward, forward
from .classify import ClassPartition, empirical_classes
from .perms import (
    Perm,
    all_perms,
    apply_symmetry,
    check_perm,
    complement,
    decreasing,
    decreasing_max_last,
    direct_sum,
    format_perm,
    inverse,
    inversions,
    is_even,
    reverse,
)
from .shapes import (
    format_shape,
    is_transversal,
    shapes_in_box,
    transversal_contains,
    transversals,
)

STATUS_VERIFIED = "verified"
STATUS_REFUTED = "refuted"
STATUS_EXHAUSTED = "exhausted-no-counterexample"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check; regenerable from (name, params)."""

    name: str
    params: dict
    status: str
    horizons: dict
    elapsed_ms: int
    tool_version: str
    witness: dict | None = None
    details: dict | None = None

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "horizons": self.horizons,
            "elapsed_ms": self.elapsed_ms,
            "tool_version": self.tool_version,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details is not None:
            out["details"] = self.details
        return out


# ---------------------------------------------------------------------------
# naive oracle (slow on purpose: full filter, subsequence scan containment)

def _pattern_of(letters) -> Perm:
    ranks = sorted(letters)
    return tuple(ranks.index(v) + 1 for v in letters)

def _naive_contains(word: Perm, sigma: Perm) -> bool:
    k = len(sigma)
    return any(
        _pattern_of(sub) == sigma
        for sub in itertools.combinations(word, k)
    )

def _naive_shape_contains(parts, word: Perm, sigma: Perm) -> bool:
    k = len(sigma)
    n = len(word)
    for cols in itertools.combinations(range(n), k):
        letters = [word[c] for c in cols]
        if _pattern_of(letters) == sigma and parts[max(letters) - 1] >= cols[-1] + 1:
            return True
    return False

def _oracle_count(n: int, sigma: Perm) -> CountTriple:
    total = even = 0
    for p in all_perms(n):
        if not _naive_contains(p, sigma):
            total += 1
            even += is_even(p)
    return CountTriple(total, even, total - even)

def _oracle_count_shape(parts, sigma: Perm) -> CountTriple:
    n = len(parts)
    total = even = 0
    for p in all_perms(n):
        if is_transversal(parts, p) and not _naive_shape_contains(parts, p, sigma):
            total += 1
            even += is_even(p)
    return CountTriple(total, even, total - even)


def _confirm_even_mismatch(a: Perm, b: Perm, n: int, ea: int, eb: int) -> None:
    """Abort unless the naive oracle reproduces a reported count mismatch."""
    oa, ob = _oracle_count(n, a), _oracle_count(n, b)
    if oa.even != ea or ob.even != eb or oa.even == ob.even:
        raise RuntimeError(
            f"pruned counter disagrees with the naive oracle at n={n}: "
            f"engine said e({format_perm(a)})={ea}, e({format_perm(b)})={eb}; "
            f"oracle says {oa.even} and {ob.even}"
        )


# ---------------------------------------------------------------------------
# the checks

def _pair_rows(pairs, max_n, jobs, cache):
    from .counting import avoidance_vector

    rows = []
    for a, b in pairs:
        va = avoidance_vector(a, max_n, jobs=jobs, cache=cache).evens()
        vb = avoidance_vector(b, max_n, jobs=jobs, cache=cache).evens()
        rows.append(
            {"a": format_perm(a), "b": format_perm(b), "evens_a": list(va), "evens_b": list(vb)}
        )
        for n, (ea, eb) in enumerate(zip(va, vb)):
            if ea != eb:
                _confirm_even_mismatch(a, b, n, ea, eb)
                witness = {
                    "a": format_perm(a), "b": format_perm(b),
                    "n": n, "even_a": ea, "even_b": eb,
                }
                return witness, rows
    return None, rows


def check_theorem_jtft(t: int = 3, box: int = 6, jobs: int = 1, cache=None) -> tuple:
    """Rotation-map theorem: decreasing(t) and max-last(t) have matching
    avoider counts on every shape in the box, with the forward/backward maps
    as explicit mutually inverse bijections (sign-preserving for odd t).

    For even t the parity claim is intentionally absent: totals still agree,
    and the report carries a witness that a single rotation flips sign.
    """
    if t < 2:
        raise ValueError(f"need t >= 2: {t}")
    J, F = decreasing(t), decreasing_max_last(t)
    odd = t % 2 == 1
    details: dict = {}

    # opposite-sign patterns separate at n = t (avoiders of sigma in S_t are
    # everything but sigma itself, so the even count remembers sigma's sign)
    evens_at_t = {p: count_avoiders(t, p, cache=cache).even for p in all_perms(t)}
    for a, b in itertools.combinations(evens_at_t, 2):
        if is_even(a) != is_even(b) and evens_at_t[a] == evens_at_t[b]:
            # proven impossible, so this is an engine bug, not a finding
            oa, ob = _oracle_count(t, a), _oracle_count(t, b)
            raise RuntimeError(
                f"sign separation failed at n={t} for {a!r} vs {b!r} "
                f"(engine {evens_at_t[a]}/{evens_at_t[b]}, oracle {oa.even}/{ob.even})"
            )
    details["sign_separation_at_n"] = t

    shapes_checked = words_checked = 0
    flip_witness = None
    for rows in range(1, box + 1):
        for parts in shapes_in_box(rows):
            cj = count_avoiders_shape(parts, J, jobs=jobs, cache=cache)
            cf = count_avoiders_shape(parts, F, jobs=jobs, cache=cache)
            if cj.total != cf.total or (odd and cj.even != cf.even):
                oj, of = _oracle_count_shape(parts, J), _oracle_count_shape(parts, F)
                if (oj, of) != (cj, cf):
                    raise RuntimeError(
                        f"pruned counter disagrees with the naive oracle on {parts!r}"
                    )
                witness = {
                    "shape": format_shape(parts),
                    "counts_decreasing": [cj.total, cj.even, cj.odd],
                    "counts_max_last": [cf.total, cf.even, cf.odd],
                }
                return STATUS_REFUTED, {"box": box, "t": t}, witness, details
            av_f = [
                w for w in transversals(parts)
                if not transversal_contains(parts, w, F)
            ]
            av_j = {
                w for w in transversals(parts)
                if not transversal_contains(parts, w, J)
            }
            images = set()
            for w in av_f:
                img, trace = forward(parts, w, t)
                back, _ = backward(parts, img, t)
                round_trip = back == w
                parity_ok = (not odd) or (is_even(img) == is_even(w))
                if img not in av_j or not round_trip or not parity_ok:
                    witness = {
                        "shape": format_shape(parts),
                        "word": format_perm(w),
                        "image": format_perm(img),
                        "round_trip": format_perm(back),
                    }
                    return STATUS_REFUTED, {"box": box, "t": t}, witness, details
                if not odd and flip_witness is None and trace.steps:
                    first = trace.steps[0]
                    flip_witness = {
                        "word": format_perm(w),
                        "selection": list(first.selection),
                        "after_one_rotation": format_perm(first.word),
                    }
                images.add(img)
            if images != av_j:
                witness = {"shape": format_shape(parts), "missed": len(av_j - images)}
                return STATUS_REFUTED, {"box": box, "t": t}, witness, details
            shapes_checked += 1
            words_checked += len(av_f)
    details["shapes_checked"] = shapes_checked
    details["words_checked"] = words_checked
    if not odd:
        details["sign_flip_witness"] = flip_witness
    return STATUS_VERIFIED, {"box": box, "t": t}, None, details


def check_sign_symmetry(max_n: int = 7) -> tuple:
    """Sign under reverse/complement/inverse, exhaustively for 1 <= n <= max_n:
    inv(reverse) = C(n,2) - inv, ditto complement, inv(inverse) = inv, and the
    iff-rule that reverse/complement preserve sign exactly when n = 0, 1 mod 4.
    """
    checked = 0
    flip_witnesses: dict[int, dict] = {}
    for n in range(1, max_n + 1):
        half_turns = n * (n - 1) // 2
        keeps = n % 4 in (0, 1)
        for p in all_perms(n):
            inv_p = inversions(p)
            r, c, i = reverse(p), complement(p), inverse(p)
            if inversions(r) != half_turns - inv_p or inversions(c) != half_turns - inv_p:
                raise RuntimeError(f"inversion identity failed at {p!r}")
            if inversions(i) != inv_p:
                raise RuntimeError(f"inverse identity failed at {p!r}")
            if (is_even(p) == is_even(r)) != keeps or (is_even(p) == is_even(c)) != keeps:
                raise RuntimeError(f"mod-4 sign rule failed at {p!r}")
            if not keeps and n not in flip_witnesses:
                flip_witnesses[n] = {"word": format_perm(p), "reverse": format_perm(r)}
            checked += 1
    details = {
        "permutations_checked": checked,
        "sign_flip_witnesses": {str(n): w for n, w in sorted(flip_witnesses.items())},
    }
    return STATUS_VERIFIED, {"max_n": max_n}, None, details


#: the four conjectured length-5 merges (beyond everything provable)
S5_CONJECTURED_PAIRS: tuple[tuple[Perm, Perm], ...] = (
    ((1, 2, 3, 4, 5), (4, 5, 3, 1, 2)),
    ((5, 4, 3, 2, 1), (2, 1, 3, 5, 4)),
    ((1, 2, 3, 5, 4), (4, 5, 3, 2, 1)),
    ((1, 3, 5, 2, 4), (4, 2, 5, 3, 1)),
)


def check_conj_s5_pairs(max_n: int = 8, jobs: int = 1, cache=None) -> tuple:
    """The four conjectured length-5 equivalences, tested to the horizon."""
    witness, rows = _pair_rows(S5_CONJECTURED_PAIRS, max_n, jobs, cache)
    status = STATUS_REFUTED if witness else STATUS_EXHAUSTED
    return status, {"max_n": max_n}, witness, {"pairs": rows}


def check_conj_jrjs(t: int = 5, max_n: int = 8, jobs: int = 1, cache=None) -> tuple:
    """For odd t, every split decreasing(r) + decreasing(t - r) is conjectured
    to share even counts with decreasing(t) itself."""
    if t < 1 or t % 2 == 0:
        raise ValueError(f"need odd t >= 1: {t}")
    target = decreasing(t)
    pairs = [
        (direct_sum(decreasing(r), decreasing(t - r)), target)
        for r in range(1, t)
    ]
    witness, rows = _pair_rows(pairs, max_n, jobs, cache)
    status = STATUS_REFUTED if witness else STATUS_EXHAUSTED
    return status, {"max_n": max_n, "t": t}, witness, {"pairs": rows}


def check_conj_sw_even_shape(
    box: int = 5, alpha_max: int = 2, max_n: int = 7, jobs: int = 1, cache=None
) -> tuple:
    """Conjectured even-shape equivalence of 312 and 231: parity-split counts
    per shape in the box, plus plain even counts of 231 + alpha vs 312 + alpha
    for all tails alpha up to the given length."""
    a3, b3 = (3, 1, 2), (2, 3, 1)
    shapes_checked = 0
    for rows in range(1, box + 1):
        for parts in shapes_in_box(rows):
            ca = count_avoiders_shape(parts, a3, jobs=jobs, cache=cache)
            cb = count_avoiders_shape(parts, b3, jobs=jobs, cache=cache)
            if ca.total != cb.total:
                # classically proven equal on every shape; a gap is a bug
                raise RuntimeError(
                    f"total counts of 312/231 differ on {parts!r}: {ca} vs {cb}"
                )
            if ca.even != cb.even:
                oa, ob = _oracle_count_shape(parts, a3), _oracle_count_shape(parts, b3)
                if (oa.even, ob.even) != (ca.even, cb.even) or oa.even == ob.even:
                    raise RuntimeError(
                        f"pruned counter disagrees with the naive oracle on {parts!r}"
                    )
                witness = {
                    "shape": format_shape(parts),
                    "even_312": ca.even,
                    "even_231": cb.even,
                }
                return (
                    STATUS_REFUTED,
                    {"box": box, "alpha_max": alpha_max, "max_n": max_n},
                    witness,
                    None,
                )
            shapes_checked += 1
    pairs = [
        (direct_sum(b3, alpha), direct_sum(a3, alpha))
        for size in range(1, alpha_max + 1)
        for alpha in all_perms(size)
    ]
    witness, rows_ = _pair_rows(pairs, max_n, jobs, cache)
    status = STATUS_REFUTED if witness else STATUS_EXHAUSTED
    details = {"shapes_checked": shapes_checked, "sum_pairs_checked": len(rows_)}
    return status, {"box": box, "alpha_max": alpha_max, "max_n": max_n}, witness, details


def check_conj_refinement(
    max_len: int = 4, max_n: int = 9, jobs: int = 1, cache=None
) -> tuple:
    """Conjecture that the parity-refined partition refines the classical one:
    patterns with equal even vectors (n <= max_n) must also have equal totals."""
    for k in range(1, max_len + 1):
        partition = empirical_classes(k, max_n, "even-wilf", jobs=jobs, cache=cache)
        vectors = partition.vectors
        assert vectors is not None
        for block in partition.blocks:
            rep = block[0]
            for other in block[1:]:
                if vectors[rep].totals() != vectors[other].totals():
                    ta, tb = vectors[rep].totals(), vectors[other].totals()
                    n = next(i for i, (x, y) in enumerate(zip(ta, tb)) if x != y)
                    oa, ob = _oracle_count(n, rep), _oracle_count(n, other)
                    if (oa.total, ob.total) != (ta[n], tb[n]) or oa.total == ob.total:
                        raise RuntimeError(
                            "pruned counter disagrees with the naive oracle "
                            f"at n={n} for {rep!r} / {other!r}"
                        )
                    witness = {
                        "a": format_perm(rep),
                        "b": format_perm(other),
                        "n": n,
                        "total_a": ta[n],
                        "total_b": tb[n],
                    }
                    return (
                        STATUS_REFUTED,
                        {"max_len": max_len, "max_n": max_n},
                        witness,
                        None,
                    )
    return STATUS_EXHAUSTED, {"max_len": max_len, "max_n": max_n}, None, None


def check_simion_schmidt_mod4(max_n: int = 10, jobs: int = 1, cache=None) -> tuple:
    """123 and 132 have equal even counts at all but one residue mod 4.

    The classical signed enumerations make the 123-avoiders parity-balanced
    at even lengths, and reversal symmetry matches the two patterns when
    n = 0, 1 mod 4; together that gives e_n(123) = e_n(132) for every
    n != 3 (mod 4).  (At n = 3 mod 4 the data disagree from n = 3 on --
    the report records both excluded-residue rows rather than asserting
    anything there.)
    """
    from .counting import avoidance_vector

    va = avoidance_vector((1, 2, 3), max_n, jobs=jobs, cache=cache).evens()
    vb = avoidance_vector((1, 3, 2), max_n, jobs=jobs, cache=cache).evens()
    witness = None
    excluded = {}
    for n in range(max_n + 1):
        if n % 4 == 3:
            excluded[str(n)] = {"even_123": va[n], "even_132": vb[n], "equal": va[n] == vb[n]}
            continue
        if va[n] != vb[n] and witness is None:
            _confirm_even_mismatch((1, 2, 3), (1, 3, 2), n, va[n], vb[n])
            witness = {"n": n, "even_123": va[n], "even_132": vb[n]}
    details = {
        "evens_123": list(va),
        "evens_132": list(vb),
        "at_excluded_residue_3_mod_4": excluded,
        "at_multiples_of_4": {
            str(n): {"even_123": va[n], "even_132": vb[n], "equal": va[n] == vb[n]}
            for n in range(4, max_n + 1, 4)
        },
    }
    status = STATUS_REFUTED if witness else STATUS_EXHAUSTED
    return status, {"max_n": max_n}, witness, details


def check_even_horizon_12345(max_n: int = 10, jobs: int = 1, cache=None) -> tuple:
    """Even-length horizons only: e_n(12345) = e_n(54321) for even n <= max_n."""
    from .counting import avoidance_vector

    va = avoidance_vector((1, 2, 3, 4, 5), max_n, jobs=jobs, cache=cache).evens()
    vb = avoidance_vector((5, 4, 3, 2, 1), max_n, jobs=jobs, cache=cache).evens()
    witness = None
    for n in range(0, max_n + 1, 2):
        if va[n] != vb[n]:
            _confirm_even_mismatch((1, 2, 3, 4, 5), (5, 4, 3, 2, 1), n, va[n], vb[n])
            witness = {"n": n, "even_12345": va[n], "even_54321": vb[n]}
            break
    details = {"evens_12345": list(va), "evens_54321": list(vb)}
    status = STATUS_REFUTED if witness else STATUS_EXHAUSTED
    return status, {"max_n": max_n}, witness, details


REGISTRY = {
    "theorem-jtft": check_theorem_jtft,
    "sign-symmetry": check_sign_symmetry,
    "conj-s5-pairs": check_conj_s5_pairs,
    "conj-jrjs": check_conj_jrjs,
    "conj-sw-even-shape": check_conj_sw_even_shape,
    "conj-refinement": check_conj_refinement,
    "simion-schmidt-mod4": check_simion_schmidt_mod4,
    "even-horizon-12345": check_even_horizon_12345,
}


def run_check(name: str, **params) -> CheckReport:
    """Run a registered check by name and wrap the outcome in a CheckReport."""
    try:
        fn = REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise ValueError(f"unknown check {name!r}; available: {known}") from None
    bound = inspect.signature(fn).bind(**params)
    bound.apply_defaults()
    effective = {k: v for k, v in bound.arguments.items() if k != "cache"}
    t0 = time.perf_counter()
    status, horizons, witness, details = fn(**params)
    elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return CheckReport(
        name=name,
        params=effective,
        status=status,
        horizons=horizons,
        elapsed_ms=elapsed_ms,
        tool_version=__version__,
        witness=witness,
        details=details,
    )
