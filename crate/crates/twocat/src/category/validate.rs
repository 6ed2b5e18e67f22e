use super::{CellId, TwoCategory};
use crate::report::ValidationReport;

/// Checks every strict 2-category axiom and reports each violation with the
/// cells involved. An empty report means `c` is a strict 2-category.
pub fn validate(c: &TwoCategory) -> ValidationReport {
    let mut r = ValidationReport::new();
    let o = |x: CellId| c.object_name(x).to_string();
    let n1 = |f: CellId| c.one_cell(f).name.clone();
    let n2 = |a: CellId| c.two_cell(a).name.clone();

    for a in 0..c.two_cell_count() {
        let (f, g) = (c.src2(a), c.tgt2(a));
        r.require(
            c.src1(f) == c.src1(g) && c.tgt1(f) == c.tgt1(g),
            "2-cell boundary not parallel",
            || format!("{}: {} ⇒ {}", n2(a), n1(f), n1(g)),
        );
    }
    for x in 0..c.object_count() {
        match c.try_id1(x) {
            None => r.push("missing identity 1-cell", o(x)),
            Some(i) => r.require(
                c.src1(i) == x && c.tgt1(i) == x,
                "malformed table: id1",
                || format!("1_{} = {}", o(x), n1(i)),
            ),
        }
    }
    for f in 0..c.one_cell_count() {
        match c.try_id2(f) {
            None => r.push("missing identity 2-cell", n1(f)),
            Some(i) => r.require(
                c.src2(i) == f && c.tgt2(i) == f,
                "malformed table: id2",
                || format!("1_{} = {}", n1(f), n2(i)),
            ),
        }
    }

    // Malformed entries: keys that are not composable or values with the wrong boundary.
    let mut malformed = false;
    for (&(g, f), &h) in c.hcomp1_table() {
        let ok = c.tgt1(f) == c.src1(g) && c.src1(h) == c.src1(f) && c.tgt1(h) == c.tgt1(g);
        if !ok {
            malformed = true;
            r.push(
                "malformed table: hcomp1",
                format!("{} ∘ {} = {}", n1(g), n1(f), n1(h)),
            );
        }
    }
    for (&(b, a), &h) in c.vcomp2_table() {
        let ok = c.tgt2(a) == c.src2(b) && c.src2(h) == c.src2(a) && c.tgt2(h) == c.tgt2(b);
        if !ok {
            malformed = true;
            r.push(
                "malformed table: vcomp2",
                format!("{} · {} = {}", n2(b), n2(a), n2(h)),
            );
        }
    }
    for (&(b, a), &h) in c.hcomp2_table() {
        let (f, g) = (c.src2(a), c.tgt2(a));
        let (f2, g2) = (c.src2(b), c.tgt2(b));
        let ok = c.tgt1(f) == c.src1(f2)
            && c.try_comp1(f2, f) == Some(c.src2(h))
            && c.try_comp1(g2, g) == Some(c.tgt2(h));
        if !ok {
            malformed = true;
            r.push(
                "malformed table: hcomp2",
                format!("{} ∘ {} = {}", n2(b), n2(a), n2(h)),
            );
        }
    }

    // Totality on composable pairs.
    let mut partial = false;
    for f in 0..c.one_cell_count() {
        for &g in c.one_cells_from(c.tgt1(f)) {
            if c.try_comp1(g, f).is_none() {
                partial = true;
                r.push(
                    "non-total table: hcomp1",
                    format!("missing {} ∘ {}", n1(g), n1(f)),
                );
            }
        }
    }
    for a in 0..c.two_cell_count() {
        for &b in c.two_cells_from(c.tgt2(a)) {
            if c.try_vcomp(b, a).is_none() {
                partial = true;
                r.push(
                    "non-total table: vcomp2",
                    format!("missing {} · {}", n2(b), n2(a)),
                );
            }
        }
        let y = c.tgt1(c.src2(a));
        for &f2 in c.one_cells_from(y) {
            for &b in c.two_cells_from(f2) {
                if c.try_hcomp(b, a).is_none() {
                    partial = true;
                    r.push(
                        "non-total table: hcomp2",
                        format!("missing {} ∘ {}", n2(b), n2(a)),
                    );
                }
            }
        }
    }
    if malformed || partial || !r.is_empty() {
        return r;
    }

    // Category axioms for 1-cells.
    for f in 0..c.one_cell_count() {
        let (x, y) = (c.src1(f), c.tgt1(f));
        r.require(c.comp1(f, c.id1(x)) == f, "hcomp1 right unit", || n1(f));
        r.require(c.comp1(c.id1(y), f) == f, "hcomp1 left unit", || n1(f));
        for &g in c.one_cells_from(y) {
            let gf = c.comp1(g, f);
            for &h in c.one_cells_from(c.tgt1(g)) {
                r.require(
                    c.comp1(h, gf) == c.comp1(c.comp1(h, g), f),
                    "hcomp1 associativity",
                    || format!("({}, {}, {})", n1(h), n1(g), n1(f)),
                );
            }
        }
    }
    // Each hom is a category under vertical composition.
    for a in 0..c.two_cell_count() {
        r.require(
            c.vcomp(a, c.id2(c.src2(a))) == a,
            "vcomp2 right unit",
            || n2(a),
        );
        r.require(
            c.vcomp(c.id2(c.tgt2(a)), a) == a,
            "vcomp2 left unit",
            || n2(a),
        );
        for &b in c.two_cells_from(c.tgt2(a)) {
            let ba = c.vcomp(b, a);
            for &g in c.two_cells_from(c.tgt2(b)) {
                r.require(
                    c.vcomp(g, ba) == c.vcomp(c.vcomp(g, b), a),
                    "vcomp2 associativity",
                    || format!("({}, {}, {})", n2(g), n2(b), n2(a)),
                );
            }
        }
    }
    // Horizontal composition of 2-cells: units, associativity, identities, interchange.
    for a in 0..c.two_cell_count() {
        let f = c.src2(a);
        let (x, y) = (c.src1(f), c.tgt1(f));
        r.require(
            c.hcomp(a, c.id2_of_object(x)) == a,
            "hcomp2 right unit",
            || n2(a),
        );
        r.require(
            c.hcomp(c.id2_of_object(y), a) == a,
            "hcomp2 left unit",
            || n2(a),
        );
        for &f2 in c.one_cells_from(y) {
            for &b in c.two_cells_from(f2) {
                let ba = c.hcomp(b, a);
                let z = c.tgt1(f2);
                for &f3 in c.one_cells_from(z) {
                    for &g in c.two_cells_from(f3) {
                        r.require(
                            c.hcomp(g, ba) == c.hcomp(c.hcomp(g, b), a),
                            "hcomp2 associativity",
                            || format!("({}, {}, {})", n2(g), n2(b), n2(a)),
                        );
                    }
                }
            }
        }
    }
    for f in 0..c.one_cell_count() {
        for &g in c.one_cells_from(c.tgt1(f)) {
            r.require(
                c.hcomp(c.id2(g), c.id2(f)) == c.id2(c.comp1(g, f)),
                "hcomp2 preserves identities",
                || format!("1_{} ∘ 1_{}", n1(g), n1(f)),
            );
        }
    }
    // Interchange: (β'·α')∘(β·α) = (β'∘β)·(α'∘α).
    for a in 0..c.two_cell_count() {
        let y = c.tgt1(c.src2(a));
        for &b in c.two_cells_from(c.tgt2(a)) {
            let ba = c.vcomp(b, a);
            for &f2 in c.one_cells_from(y) {
                for &a2 in c.two_cells_from(f2) {
                    for &b2 in c.two_cells_from(c.tgt2(a2)) {
                        let lhs = c.hcomp(c.vcomp(b2, a2), ba);
                        let rhs = c.vcomp(c.hcomp(b2, b), c.hcomp(a2, a));
                        r.require(lhs == rhs, "interchange law", || {
                            format!("β'={} α'={} β={} α={}", n2(b2), n2(a2), n2(b), n2(a))
                        });
                    }
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Tables;

    fn wtc_tables() -> Tables {
        TwoCategory::unit_closed(
            &["a", "b"],
            &[("f", "a", "b"), ("g", "a", "b")],
            &[("phi", "f", "g")],
        )
        .unwrap()
        .tables()
    }

    #[test]
    fn non_composable_vertical_entry_is_malformed() {
        let mut t = wtc_tables();
        t.vcomp2.push(("phi".into(), "phi".into(), "phi".into()));
        let c = TwoCategory::from_tables(&t).unwrap();
        let r = validate(&c);
        assert!(r.has_rule("malformed table: vcomp2"), "{r}");
    }

    #[test]
    fn missing_entry_names_the_pair() {
        let mut t = wtc_tables();
        t.hcomp1.retain(|(g, f, _)| !(g == "1_b" && f == "f"));
        let c = TwoCategory::from_tables(&t).unwrap();
        let r = validate(&c);
        assert!(r.has_rule("non-total table: hcomp1"));
        assert!(
            r.violations().iter().any(|v| v.detail.contains("1_b ∘ f")),
            "{r}"
        );
    }

    #[test]
    fn wrong_interchange_is_reported() {
        // A composite that is well-typed but breaks the unit law.
        let mut t = wtc_tables();
        for row in &mut t.hcomp2 {
            if row.0 == "1_1_b" && row.1 == "phi" {
                row.2 = "1_f".into();
            }
        }
        let c = TwoCategory::from_tables(&t).unwrap();
        assert!(!validate(&c).is_empty());
    }
}
