import math
from numbers import Integral, Real

import mdformat
import pandas as pd
from markdown import markdown


def _cell(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Real) and not isinstance(value, Integral):
        return "%.17g" % float(value)
    return str(value).replace("|", "\\|")


def markdown_table(table: pd.DataFrame, title: str = "") -> str:
    """A titled GFM table, normalized by mdformat."""
    lines = [f"# {title}", ""] if title else []
    header = [str(c) for c in table.columns]
    lines.append("| " + " | ".join(header) + " |")
    lines.append("| " + " | ".join("---" for _ in header) + " |")
    for row in table.itertuples(index=False, name=None):
        lines.append("| " + " | ".join(_cell(v) for v in row) + " |")
    return mdformat.text("\n".join(lines) + "\n", options={"wrap": "no"}, extensions={"tables"})


def markdown_to_html(md_content: str, title: str = "") -> str:
    """Render markdown into a standalone UTF-8 HTML page.

    Args:
        md_content: Markdown source, tables allowed
        title: Page title

    Returns:
        str: The complete HTML document
    """
    html_content = markdown(md_content, extensions=["extra"])

    css = """
        body {
            font-family: 'Segoe UI', 'Calibri', 'Open Sans', sans-serif;
            line-height: 1.4;
            margin: 0 auto;
            max-width: 60em;
            font-size: 10.5pt;
            color: #2d2d2d;
        }
        h1 {
            font-size: 15pt;
            font-weight: 400;
            color: #1a1a1a;
            border-bottom: 1px solid #ddd;
        }
        table {
            border-collapse: collapse;
            margin: 0.6em 0;
        }
        th, td {
            border: 1px solid #ddd;
            padding: 2px 8px;
            font-variant-numeric: tabular-nums;
            text-align: right;
        }
        th {
            background: #f3f3f3;
            font-weight: 500;
        }
    """

    return f"""<!DOCTYPE html>
<html>
<head>
    <meta charset="UTF-8">
    <title>{title}</title>
    <style>{css}</style>
</head>
<body>
{html_content}
</body>
</html>
"""


if __name__ == "__main__":
    sample = pd.DataFrame({"n": [1, 2], "E [Ry]": [-1.0, -0.25]})
    print(markdown_to_html(markdown_table(sample, "Bohr levels"), "Bohr levels"))
