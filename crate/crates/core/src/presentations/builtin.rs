use std::collections::BTreeMap;

use crate::voa::VoaPresentation;

use super::PresentationSpec;

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn assignment(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

const HEIS_XY: [(&str, &str); 2] = [("x", "a(-1)|0>"), ("y", "a(-1)^2|0>")];

const HEIS_FIVE: [(&str, &str); 5] = [
    ("x", "a(-1)|0>"),
    ("y", "a(-1)^2|0>"),
    ("yt", "a(-4)a(-1)|0>"),
    ("z", "a(-4)a(-1)^2|0>"),
    ("zt", "a(-4)^2a(-1)|0>"),
];

const CHANGE_OF_VARIABLES: [(&str, &str); 3] = [
    ("Y", "1/12(x^2 - 2y - yt)"),
    ("Z", "1/32(x^3 + 2x*yt + zt)"),
    ("W", "-1/40(2z + zt + 2x*y - 2x*yt - 3x^3)"),
];

/// Products and filtration degrees `r` with `product ∈ O₂(V) + F_r(𝟏)`.
pub const LOWER_ORDER_PRODUCTS: [(&str, usize); 10] = [
    ("(x^2 - y)Y", 3),
    ("Y^2", 3),
    ("(x^2 - y)Z", 4),
    ("(x^2 - y)W", 4),
    ("ZY", 4),
    ("YW", 4),
    ("(x^2 - y)^3", 5),
    ("Z^2", 5),
    ("W^2", 5),
    ("0", 0),
];

fn heis(name: &str, level: u32) -> PresentationSpec {
    PresentationSpec {
        name: name.into(),
        level,
        presentation: VoaPresentation::Heisenberg,
        commuting: strs(&["x", "y"]),
        noncommuting: vec![],
        assignment: assignment(&HEIS_XY),
        definitions: vec![],
        relations: vec![],
        search_bound: 0,
        max_u_weight: None,
        expected_notes: String::new(),
    }
}

/// The presentations shipped with the crate.
pub fn builtin_specs() -> Vec<PresentationSpec> {
    let heis_a0 = PresentationSpec {
        relations: strs(&["x^2 - y"]),
        expected_notes: "A_0 ≅ ℂ[x,y]/(x² − y) ≅ ℂ[x]; M(1,λ) ↔ ℂ[x]/(x − λ)".into(),
        ..heis("heis_A0", 0)
    };
    let heis_a1 = PresentationSpec {
        relations: strs(&["(x^2 - y)(x^2 - y + 2)"]),
        expected_notes: "A_1 ≅ ℂ[x,y]/((x² − y)(x² − y + 2)) ≅ ℂ[x] ⊕ ℂ[x]".into(),
        ..heis("heis_A1", 1)
    };
    let heis_a1_five = PresentationSpec {
        noncommuting: strs(&["yt", "z", "zt", "Y", "Z", "W"]),
        assignment: assignment(&HEIS_FIVE),
        definitions: CHANGE_OF_VARIABLES.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        relations: strs(&["(x^2 - y)(x^2 - y + 2)", "x^2 - 2y - yt", "4x^3 - 5x*y - z", "3x^3 - 4x*y + zt", "Y", "Z", "W"]),
        expected_notes: "A_1 ≅ ℂ[x,y]⟨yt,z,zt⟩/I_1; after the change of variables I_1 = ((x² − y)(x² − y + 2), Y, Z, W)".into(),
        ..heis("heis_A1_fivevar", 1)
    };
    let heis_a2 = PresentationSpec {
        noncommuting: strs(&["yt", "z", "zt", "Y", "Z", "W"]),
        assignment: assignment(&HEIS_FIVE),
        definitions: CHANGE_OF_VARIABLES.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        relations: strs(&[
            "(x^2 - y)(x^2 - y + 2)(x^2 - y + 4)",
            "(x^2 - y + 4)Y",
            "(x^2 - y + 4)Z",
            "(x^2 - y + 4)W",
            "Y^2 - Y",
            "Z^2",
            "W^2",
            "ZY",
            "YW",
            "ZW - Y",
            "YZ - Z",
            "WY - W",
            "Y + WZ - 1/8(x^2 - y)(x^2 - y + 2)",
        ]),
        max_u_weight: Some(3),
        expected_notes: "A_2 ≅ ℂ[x,y]⟨Y,Z,W⟩/I_2 ≅ ℂ[x] ⊕ ℂ[x] ⊕ (ℂ[x] ⊗ M_2(ℂ))".into(),
        ..heis("heis_A2", 2)
    };
    let vir = |name: &str, level: u32, rel: &str, notes: &str| PresentationSpec {
        name: name.into(),
        level,
        presentation: VoaPresentation::Virasoro,
        commuting: strs(&["x", "y"]),
        noncommuting: vec![],
        assignment: assignment(&[("x", "L(-2)|0>"), ("y", "L(-2)^2|0>")]),
        definitions: vec![],
        relations: vec![rel.into()],
        search_bound: 0,
        max_u_weight: None,
        expected_notes: notes.into(),
    };
    vec![
        heis_a0,
        heis_a1,
        heis_a1_five,
        heis_a2,
        vir("vir_A0", 0, "y - x^2 - 2x", "A_0 ≅ ℂ[x,y]/(y − x² − 2x) ≅ ℂ[x]"),
        vir("vir_A1", 1, "(y - x^2 - 2x)(y - x^2 - 6x + 4)", "A_1 ≅ ℂ[x,y]/((y − x² − 2x)(y − x² − 6x + 4))"),
    ]
}

pub fn builtin(name: &str) -> Option<PresentationSpec> {
    builtin_specs().into_iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::NcPolynomial;

    #[test]
    fn shapes() {
        let names: Vec<String> = builtin_specs().into_iter().map(|s| s.name).collect();
        assert_eq!(names, ["heis_A0", "heis_A1", "heis_A1_fivevar", "heis_A2", "vir_A0", "vir_A1"]);
        assert_eq!(builtin("heis_A2").unwrap().relations.len(), 13);
        assert_eq!(builtin("vir_A0").unwrap().relations, ["y - x^2 - 2x"]);
        for s in builtin_specs() {
            let ring = s.ring().unwrap();
            for r in s.relation_polys().unwrap() {
                for v in r.variables() {
                    assert!(s.assignment.contains_key(v) || s.definitions.iter().any(|(d, _)| d == v), "{v}");
                }
            }
            for (_, d) in &s.definitions {
                ring.parse(d).unwrap();
            }
        }
    }

    // Eliminating yt, z, zt through the first-order relations leaves the
    // single level-one relation.
    #[test]
    fn five_variable_form_reduces() {
        let s = builtin("heis_A1_fivevar").unwrap();
        let ring = s.ring().unwrap();
        let elim = [("yt", "x^2 - 2y"), ("z", "4x^3 - 5x*y"), ("zt", "-3x^3 + 4x*y")];
        let mut defs: Vec<(String, NcPolynomial)> = s.definitions.iter().map(|(v, d)| (v.clone(), ring.parse(d).unwrap())).collect();
        for (v, d) in defs.iter_mut() {
            let _ = v;
            for (e, val) in elim {
                *d = ring.substitute(d, e, &ring.parse(val).unwrap());
            }
        }
        let base = ring.parse(&builtin("heis_A1").unwrap().relations[0]).unwrap();
        for r in s.relation_polys().unwrap() {
            let mut r = r;
            for (v, d) in &defs {
                r = ring.substitute(&r, v, d);
            }
            for (e, val) in elim {
                r = ring.substitute(&r, e, &ring.parse(val).unwrap());
            }
            assert!(r.is_zero() || r == base, "{r}");
        }
    }
}
