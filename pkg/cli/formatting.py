"""Table, csv and json rendering of the command reports"""

import json
from enum import Enum

import pandas as pd

TABLE1_COLUMNS = ["q", "p", "c1sq", "c2", "d_c1"]
TABLE2_COLUMNS = ["degrees", "d", "p1", "e", "c1"]


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON = "json"
    CSV = "csv"


def frame(rows, columns=None):
    """DataFrame of python integers; object dtype keeps big values exact"""
    return pd.DataFrame(rows, columns=columns, dtype=object)


def render(payload, rows, output_format, columns=None, footer=None):
    """Render one report

    Args:
        payload: json-ready dictionary or list, used for json output
        rows (list of dict): Rows for table and csv output
        output_format (OutputFormat): Requested format
        columns (list of str): Column order, defaults to the row keys
        footer (str): Extra text printed under the table, table format only

    Returns:
        str: The rendered text
    """
    if output_format == OutputFormat.JSON:
        return json.dumps(payload, indent=2)
    data = frame(rows, columns)
    if output_format == OutputFormat.CSV:
        return data.to_csv(index=False).rstrip("\n")
    text = data.to_string(index=False)
    return f"{text}\n{footer}" if footer else text


def degrees_label(degrees):
    return "(" + ",".join(str(d) for d in degrees) + ")"


def tuple_rows(result):
    return [
        {"q": row.q, "p": row.p, "c1sq": row.c1sq, "c2": row.c2, "d_c1": row.c1_div}
        for row in result.rows
    ]


def wall_rows(invariants):
    return [
        {"degrees": degrees_label(w.degrees), "d": w.d, "p1": w.m, "e": w.e, "c1": w.k}
        for w in invariants
    ]


def surface_row(label, inv):
    return {
        "surface": label,
        "c1sq": inv.c1sq,
        "c2": inv.c2,
        "chiO": inv.chiO,
        "b2": inv.b2,
        "h02": inv.h02,
        "h11": inv.h11,
        "signature": inv.signature,
        "spin": inv.spin,
        "d_c1": inv.c1_div if inv.c1_div_exact else f"odd ({inv.c1_div})",
    }


def report_row(label, report):
    h02, h11, b2 = report.basic_hodge
    return {
        "base": label,
        "manifold": report.manifold.label,
        "contact_c1_zero": report.contact_c1_zero,
        "hamilton_div": report.hamilton_div if report.hamilton_div_exact else f"odd ({report.hamilton_div})",
        "h02": h02,
        "h11": h11,
        "b2": b2,
        "negative_type": report.negative_type,
    }


def group_rows(groups):
    rows = []
    for index, group in enumerate(groups, start=1):
        for w in group.members:
            rows.append(
                {"group": index, **wall_rows([w])[0], "label": group.label}
            )
    return rows
