"""Writes crates/core/data/construction_grid.txt.

Orders come from the printed formulas, computed here independently of the
Rust code.
"""
import math
import pathlib

rows = []


def add(name, h, k, order):
    rows.append(f"{name} | {h} | {k} | {order}")


for a in range(3, 6):
    for t in range(4, 7):
        if a > t:
            continue
        for k in range(4, a + 1):
            h = f"K{t}" if a == t else f"PA{t},{a}"
            add(f"G4(a={a},t={t},k={k})", h, k, (a - 1) * (t - 1))

for k in range(5, 8):
    for t in (2 * k - 2, 2 * k - 1):
        for r in (1, 2):
            p, q = divmod(t - 2, k - 2)
            add(f"G6(delta={t - 1},k={k})", f"S{t}^{r}", k, (k - 1) * p + q)

for t in range(6, 11):
    for r in (1, 2):
        p, q = divmod(t - 2, 2)
        add(f"F1(t={t})", f"S{t}^{r}", 4, 3 * p + q)
        add(f"F2(t={t})", f"S{t}^{r}", 4, t)

for t in (13, 15, 17):
    add(f"F4(t={t})", f"S{t}^3", 4, (3 * t - 7) // 2)
    add(f"F5(t={t},r=3)", f"S{t}^3", 4, t + 2 * 3 - 3)

for t in (12, 14, 16):
    add(f"F6(t={t})", f"S{t}^3", 4, (3 * t - 6) // 2)

for t in range(3, 6):
    add(f"F7(t={t})", f"S{t}^1", 3, 5 * (t - 1))

add("F12", "PA6,5", 4, 23)
add("F13", "PA7,5", 4, 25)

path = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/construction_grid.txt"
header = "# construction | H | k | order (printed formula)\n"
path.write_text(header + "\n".join(rows) + "\n")
print(len(rows), "rows")
