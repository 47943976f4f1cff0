use std::collections::BTreeSet;

use w3cft::charge::{h_at_b2, h_of, w_scaled_at_b2, KacCharge};
use w3cft::models::{
    generalized_z3, kac_table, potts_content, specialize, z3_charge_of, z3_of_indices,
    RationalModel, Z3Rule,
};
use w3cft::rational::{as_i64, rat};
use w3cft::sl3::Z3;

fn models_up_to(n: i64) -> Vec<RationalModel> {
    let mut out = Vec::new();
    for p in 1..=n {
        for q in 1..=n {
            if let Ok(m) = RationalModel::new(p, q) {
                out.push(m);
            }
        }
    }
    out
}

/// Groups index quadruples by brute-force search for rotations.
fn brute_force_field_count(model: &RationalModel) -> usize {
    let (p, q) = (model.p(), model.p_prime());
    let mut all = Vec::new();
    for n1 in 1..p {
        for n2 in 1..p {
            for m1 in 1..q {
                for m2 in 1..q {
                    if n1 + n2 < p && m1 + m2 < q {
                        all.push([n1, n2, m1, m2]);
                    }
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut fields = 0;
    for z in &all {
        if seen.contains(z) {
            continue;
        }
        fields += 1;
        let mut cur = *z;
        for _ in 0..3 {
            seen.insert(cur);
            cur = [p - cur[0] - cur[1], cur[0], q - cur[2] - cur[3], cur[2]];
        }
    }
    fields
}

#[test]
fn table_sizes_match_brute_force() {
    for m in models_up_to(12) {
        assert_eq!(kac_table(&m).len(), brute_force_field_count(&m), "{m}");
    }
    assert_eq!(kac_table(&RationalModel::potts()).len(), 6);
}

#[test]
fn rotation_is_well_defined_on_tables() {
    for m in models_up_to(12) {
        for f in kac_table(&m) {
            let z = f.indices;
            assert_eq!(m.rotate(m.rotate(m.rotate(z))), z);
            let members: BTreeSet<_> = f.members().into_iter().collect();
            assert_eq!(members.len(), 3, "{f} in {m}");
            assert!(f.members().iter().all(|x| m.in_table(*x)));
        }
    }
}

#[test]
fn triple_members_share_h_w_and_charge() {
    for m in models_up_to(9) {
        let b2 = m.b2();
        let b = m.b();
        for f in kac_table(&m) {
            let c0 = f.charge();
            for alt in f.alternates {
                let c = KacCharge::from_ints(alt[0], alt[1], alt[2], alt[3]);
                assert_eq!(h_at_b2(&c, &b2), h_at_b2(&c0, &b2));
                assert_eq!(w_scaled_at_b2(&c, &b2), w_scaled_at_b2(&c0, &b2));
                assert!((h_of(&c).eval(b) - h_of(&c0).eval(b)).abs() < 1e-12);
                assert_eq!(z3_of_indices(alt, &m), z3_charge_of(&f, &m));
            }
        }
    }
}

#[test]
fn generalized_charge_agrees_when_p_plus_p_prime_divisible_by_three() {
    for m in models_up_to(14) {
        if m.z3_rule() != Z3Rule::Sum {
            continue;
        }
        for f in kac_table(&m) {
            let g = as_i64(&generalized_z3(&f.charge())).unwrap();
            assert_eq!(Z3::new(g), z3_charge_of(&f, &m));
        }
    }
}

#[test]
fn potts_table_decorated_by_charges() {
    let report = potts_content().unwrap();
    let model = RationalModel::potts();
    let table = kac_table(&model);
    let from_report: BTreeSet<_> = report.fields.iter().map(|f| (f.field, f.charge)).collect();
    let from_table: BTreeSet<_> = table.iter().map(|f| (*f, z3_charge_of(f, &model))).collect();
    assert_eq!(from_report, from_table);
    assert_eq!(report.get("ε").unwrap().h, rat(2, 5));
    assert_eq!(report.get("σ*").unwrap().charge, Z3::new(-1));
}

#[test]
fn sigma_lands_on_closed_forms() {
    // (p, p′) ≡ (1, −1): [[(p+2)/3, (p′+1)/3], [(p−1)/3, (p′+1)/3]]
    // (p, p′) ≡ (−1, 1): [[(p+1)/3, (p′−1)/3], [(p−2)/3, (p′−1)/3]]
    for m in models_up_to(20) {
        let (p, q) = (m.p(), m.p_prime());
        let spec = specialize(&KacCharge::sigma(), &m);
        if (p + q) % 3 != 0 {
            assert!(spec.is_err(), "{m}");
            continue;
        }
        let expect = if p % 3 == 1 {
            [(p + 2) / 3, (p - 1) / 3, (q + 1) / 3, (q + 1) / 3]
        } else {
            [(p + 1) / 3, (p - 2) / 3, (q - 1) / 3, (q - 1) / 3]
        };
        if !m.in_table(expect) {
            continue;
        }
        let spec = spec.unwrap();
        assert_eq!(spec.indices, expect, "{m}");
        let b2 = m.b2();
        assert_eq!(
            h_at_b2(&KacCharge::from_ints(expect[0], expect[1], expect[2], expect[3]), &b2),
            h_at_b2(&KacCharge::sigma(), &b2)
        );
    }
}

#[test]
fn sigma_in_inverted_potts_model() {
    let m = RationalModel::new(5, 4).unwrap();
    let spec = specialize(&KacCharge::sigma(), &m).unwrap();
    assert_eq!(spec.indices, [2, 1, 1, 1]);
    assert_eq!(h_at_b2(&KacCharge::from_ints(2, 1, 1, 1), &m.b2()), rat(1, 15));
}
