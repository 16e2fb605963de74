"""Smoke test for the genus2py extension.

Build and install it first:
    pip install --no-build-isolation ./crates/py
"""

import json

import genus2py as g


def main():
    f11 = g.Field(11)
    c = g.Curve(f11, [0, -1, 0, 0, 0, 1])
    pt = c.igusa()
    assert pt == g.IgusaPoint(f11, [20, 30, -20, -325, 64]), pt
    assert c.automorphisms() == ("GL2F3", 24)
    print("y^2 = x^5 - x over F_11:", pt, c.automorphisms())

    f3 = g.Field(3)
    e = g.Curve(f3, [1, 0, 0, 0, 0, 1])
    assert e.eo_type() == (0, 1)
    print("y^2 = x^5 + 1 over F_3: EO type", e.eo_type())

    again = g.Curve.from_json(c.to_json())
    assert again.igusa() == pt
    assert g.IgusaPoint.from_json(pt.to_json()) == pt

    d4 = g.Curve(f11, [0, 2, 0, 1, 0, 1]).igusa()
    assert "D4" in d4.strata()
    assert g.model("d4", d4).igusa() == d4

    glued = g.glue(g.Field(13), 3, 5)
    info = json.loads(glued.classify())
    assert info["reduced_order"] % 2 == 0
    print("glued curve:", glued, info["eo"], info["aut"])

    table = json.loads(g.count_table(13))
    col = table["labels"].index("C2xC2")
    row = next(r for r in table["rows"] if r["eo"] == {"f": 1, "a": 1})
    assert row["components"][col] == g.supersingular_count(13) == 1

    csv = g.census_csv(5, 1)
    assert csv.splitlines()[0] == "p,k,a0,a1,a2,igusa_key,f,a,aut,strata"
    passed, _ = g.verify_tables(3)
    assert passed
    print("census over F_5:", len(csv.splitlines()) - 1, "distinct points; tables at p = 3 pass")
    print("ok")


if __name__ == "__main__":
    main()
