"""Published reference values

Table 1 lists five hypersurfaces of bidegree (p, 3q) in CP^1 x CP^2 with c2 = 3n.
Table 2 lists three pairs of complete intersection threefolds with equal d, p1
and Euler number but different c1; p1 and c1 are the coefficients of x^2 and x.
"""

from src.calculations import stringify_integers

TABLE1_N = 21740924188

TABLE1_Q = (2, 3, 4, 6, 8)

TABLE1_ROWS = (
    {"q": 2, "p": 869636968, "c1sq": 39133663488, "d_c1": 1},
    {"q": 3, "p": 339701941, "c1sq": 48917079288, "d_c1": 1},
    {"q": 4, "p": 179677060, "c1sq": 53364086388, "d_c1": 1},
    {"q": 6, "p": 75228112, "c1sq": 57549504600, "d_c1": 5},
    {"q": 8, "p": 41098156, "c1sq": 59551226028, "d_c1": 1},
)

TABLE2_ROWS = (
    {"degrees": (70, 16, 16, 14, 7, 6), "d": 7**3 * 5 * 3 * 2**11, "p1": -5683, "e": -7767425433600, "c1": -119},
    {"degrees": (56, 49, 8, 6, 5, 4, 4), "d": 7**3 * 5 * 3 * 2**11, "p1": -5683, "e": -7767425433600, "c1": -121},
    {"degrees": (88, 28, 19, 14, 6, 6), "d": 19 * 11 * 7**2 * 3**2 * 2**8, "p1": -9147, "e": -35445749391360, "c1": -151},
    {"degrees": (76, 56, 11, 7, 6, 6, 2), "d": 19 * 11 * 7**2 * 3**2 * 2**8, "p1": -9147, "e": -35445749391360, "c1": -153},
    {"degrees": (84, 29, 25, 25, 18, 7), "d": 29 * 7**2 * 5**4 * 3**3 * 2**3, "p1": -9510, "e": -384536710530000, "c1": -178},
    {"degrees": (60, 58, 49, 9, 5, 5, 5), "d": 29 * 7**2 * 5**4 * 3**3 * 2**3, "p1": -9510, "e": -384536710530000, "c1": -180},
)

# consecutive rows of TABLE2_ROWS
TABLE2_PAIRS = ((0, 1), (2, 3), (4, 5))

# open search over r <= 3, degrees <= 12: no two multidegrees share (d, m, k mod 2)
SMALL_SEARCH_BOUNDS = {"max_codim": 3, "max_degree": 12}
SMALL_SEARCH_MULTIDEGREES = 363
SMALL_SEARCH_GROUPS = ()


def table2_multidegrees():
    return [row["degrees"] for row in TABLE2_ROWS]


def seed_tables():
    """Both tables and the small search as a json-ready dictionary, integers as decimal strings"""
    return {
        "table1": {
            "n": str(TABLE1_N),
            "c2": str(3 * TABLE1_N),
            "q": stringify_integers(list(TABLE1_Q)),
            "rows": [stringify_integers(row) for row in TABLE1_ROWS],
        },
        "table2": {
            "rows": [stringify_integers(row) for row in TABLE2_ROWS],
            "pairs": stringify_integers([list(pair) for pair in TABLE2_PAIRS]),
        },
        "small_search": {
            "bounds": stringify_integers(SMALL_SEARCH_BOUNDS),
            "multidegrees": str(SMALL_SEARCH_MULTIDEGREES),
            "groups": stringify_integers([list(group) for group in SMALL_SEARCH_GROUPS]),
        },
    }
