"""Replays of the published tables and of the paired-family identities"""

import logging
import math

from src.boothby_wang import ContactVerdict
import src.fixtures as fixtures
from src.errors import SasakiError
from src.horikawa import horikawa_spin, theorem_c_pair
from src.pair_search import (
    SearchBounds,
    VerificationResult,
    enumerate_multidegrees,
    search_collisions,
    verify_known_pairs,
)
from src.surface_tuples import tuple_search

logger = logging.getLogger(__name__)


def verify_table1(n=None, rows=None):
    """Rerun the congruence search on the published q values and compare every entry"""
    n = fixtures.TABLE1_N if n is None else n
    rows = fixtures.TABLE1_ROWS if rows is None else rows
    diff = []
    result = tuple_search(len(rows), q_override=[row["q"] for row in rows])
    if result.n != n:
        diff.append(f"table 1: n expected {n}, computed {result.n}")
    computed = {row.q: row for row in result.rows}
    for row in rows:
        found = computed.get(row["q"])
        if found is None:
            diff.append(f"table 1: q={row['q']} missing")
            continue
        for name, value in (("p", found.p), ("c1sq", found.c1sq), ("d_c1", found.c1_div)):
            if value != row[name]:
                diff.append(f"table 1 q={row['q']}: {name} expected {row[name]}, computed {value}")
        if found.c2 != 3 * n:
            diff.append(f"table 1 q={row['q']}: c2 expected {3 * n}, computed {found.c2}")
    return VerificationResult(ok=not diff, diff=tuple(diff))


def _theorem_c_diff(k):
    pair = theorem_c_pair(k)
    xk, zk = pair.xk, pair.zk
    expected = {
        "b2(X_k)": (xk.b2, 80 * k + 74),
        "b2(Z_k)": (zk.b2, 80 * k + 74),
        "h02(X_k)": (xk.h02, 10 * k + 6),
        "h02(Z_k)": (zk.h02, 8 * k + 6),
        "h11(X_k)": (xk.h11, 60 * k + 62),
        "h11(Z_k)": (zk.h11, 64 * k + 62),
        "d(c1(X_k))": (xk.c1_div, math.gcd(k, 2)),
        "n": (pair.manifold.n, 80 * k + 73),
    }
    diff = [
        f"k={k}: {name} expected {want}, computed {got}"
        for name, (got, want) in expected.items()
        if got != want
    ]
    if horikawa_spin(8 * k + 2).spin:
        diff.append(f"k={k}: Z_k came out spin")
    verdict = ContactVerdict.INEQUIVALENT if k % 2 == 0 else ContactVerdict.INCONCLUSIVE
    if pair.contact_obstruction != verdict:
        diff.append(f"k={k}: verdict expected {verdict.value}, computed {pair.contact_obstruction.value}")
    if not pair.hodge_differ:
        diff.append(f"k={k}: basic Hodge numbers agree")
    return diff


def verify_theorem_c(k_max=100):
    """Check the X_k / Z_k identities for k = 1..k_max"""
    diff = []
    for k in range(1, k_max + 1):
        diff.extend(_theorem_c_diff(k))
    return VerificationResult(ok=not diff, diff=tuple(diff))


def verify_small_search():
    """Rerun the small open search and compare with the recorded outcome"""
    bounds = SearchBounds(**fixtures.SMALL_SEARCH_BOUNDS)
    diff = []
    count = sum(1 for _ in enumerate_multidegrees(bounds))
    if count != fixtures.SMALL_SEARCH_MULTIDEGREES:
        diff.append(
            f"small search: {fixtures.SMALL_SEARCH_MULTIDEGREES} multidegrees expected, {count} enumerated"
        )
    found = tuple(
        tuple(w.degrees for w in group.members) for group in search_collisions(bounds)
    )
    if found != tuple(fixtures.SMALL_SEARCH_GROUPS):
        diff.append(f"small search: groups expected {fixtures.SMALL_SEARCH_GROUPS}, found {found}")
    return VerificationResult(ok=not diff, diff=tuple(diff))


def verify_tables(k_max=100):
    """Every published table and identity; a failed computation counts as a mismatch

    Returns:
        VerificationResult: ok and the concatenated diff lines
    """
    diff = []
    for name, replay in (
        ("table 1", verify_table1),
        ("table 2", verify_known_pairs),
        ("small search", verify_small_search),
        ("paired families", lambda: verify_theorem_c(k_max)),
    ):
        try:
            result = replay()
        except SasakiError as err:
            diff.append(f"{name}: {err}")
            continue
        logger.info("%s: %s", name, "match" if result.ok else f"{len(result.diff)} mismatches")
        diff.extend(result.diff)
    return VerificationResult(ok=not diff, diff=tuple(diff))
