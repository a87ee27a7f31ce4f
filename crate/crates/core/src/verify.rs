//! Property checks tying an atom inventory and structure report to the
//! counting theorems and the closed-form atom counts of special ring shapes.

use std::sync::Arc;

use crate::atoms::AtomInventory;
use crate::error::Result;
use crate::gf::is_prime;
use crate::linalg::Subspace;
use crate::ring::RingSpec;
use crate::structure::{is_universal, PowerChain, StructureReport};

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl PropertyCheck {
    pub fn new(name: &'static str, passed: bool, detail: String) -> PropertyCheck {
        PropertyCheck {
            name,
            passed,
            detail,
        }
    }

    /// `premise ⇒ conclusion`; vacuous when the premise fails.
    fn implies(name: &'static str, premise: bool, conclusion: bool, detail: String) -> PropertyCheck {
        let detail = if premise {
            detail
        } else {
            format!("vacuous ({detail})")
        };
        PropertyCheck::new(name, !premise || conclusion, detail)
    }
}

/// Number of one-dimensional subspaces of a `dim`-dimensional space over GF(q).
pub fn lines(q: u64, dim: usize) -> u64 {
    (0..dim).fold(0, |acc, _| acc * q + 1)
}

/// Checks the counting theorems on a computed inventory and report.
pub fn theorem_checks(
    spec: &Arc<RingSpec>,
    inv: &AtomInventory,
    rep: &StructureReport,
) -> Result<Vec<PropertyCheck>> {
    let q = spec.q();
    let n = spec.n();
    let total = inv.total() as u64;
    let layer1 = inv.layer_count(1) as u64;
    let in_m2 = inv.in_m2() as u64;
    let k = rep.dim_m_over_m2;
    let m = lines(q, k);
    let v = rep.v_order;
    let m2_universal = rep.least_universal <= 2;
    let dvr = rep.dvr;
    let mut out = Vec::new();

    out.push(PropertyCheck::new(
        "layer1_lower_bound",
        layer1 >= m,
        format!("layer1={layer1}, m={m}"),
    ));
    out.push(PropertyCheck::new(
        "m2_universal_iff_layer1_is_m",
        m2_universal == (layer1 == m),
        format!("least_universal={}, layer1={layer1}, m={m}", rep.least_universal),
    ));
    out.push(PropertyCheck::implies(
        "atom_in_m2_bounds",
        in_m2 > 0,
        layer1 >= m * q && total > m * q && layer1 >= 6 && total >= 7,
        format!("in_m2={in_m2}, layer1={layer1}, total={total}, m*q={}", m * q),
    ));
    out.push(PropertyCheck::new(
        "not_exactly_two_atoms",
        total != 2 && layer1 != 2,
        format!("total={total}, layer1={layer1}"),
    ));
    out.push(PropertyCheck::implies(
        "non_dvr_has_three_layer1_atoms",
        !dvr,
        layer1 >= 3,
        format!("layer1={layer1}"),
    ));

    let layers = inv.layer_counts();
    let divisible = total % v == 0 && layers.values().all(|&c| c as u64 % v == 0);
    out.push(PropertyCheck::new(
        "counts_divisible_by_v",
        divisible,
        format!("|V|={v}, total={total}, layers={layers:?}"),
    ));

    let orbits = rep.v_orbits.len();
    let layer1_orbits = rep
        .v_orbits
        .iter()
        .filter(|o| inv.atoms()[o[0]].layer == 1)
        .count();
    out.push(PropertyCheck::new(
        "m2_universal_iff_single_v_orbit",
        m2_universal == (orbits == 1) && m2_universal == (layer1_orbits == 1),
        format!(
            "least_universal={}, orbits={orbits}, layer1_orbits={layer1_orbits}",
            rep.least_universal
        ),
    ));
    out.push(PropertyCheck::implies(
        "prime_total_gives_m2_universal",
        is_prime(total),
        m2_universal,
        format!("total={total}, least_universal={}", rep.least_universal),
    ));
    out.push(PropertyCheck::implies(
        "prime_layer1_gives_m2_universal",
        is_prime(layer1),
        m2_universal,
        format!("layer1={layer1}, least_universal={}", rep.least_universal),
    ));
    out.push(PropertyCheck::implies(
        "twice_prime_total_no_atom_in_m2",
        q != 2 && total % 2 == 0 && is_prime(total / 2),
        in_m2 == 0,
        format!("total={total}, q={q}, in_m2={in_m2}"),
    ));
    out.push(PropertyCheck::implies(
        "few_layer1_atoms_give_q_plus_one",
        !dvr && layer1 < 2 * q,
        total == q + 1 && m2_universal,
        format!("layer1={layer1}, total={total}, q={q}"),
    ));
    let cor_bound = lines(q, k + 1) + q - 1 + u64::from(rep.m_maximal_in_multiplier);
    out.push(PropertyCheck::implies(
        "atom_in_m2_total_bound",
        in_m2 > 0,
        total >= cor_bound,
        format!("total={total}, bound={cor_bound}"),
    ));
    out.push(PropertyCheck::new(
        "weakly_universal_by_layer1_count",
        rep.least_weakly_universal <= (layer1 as usize).max(1),
        format!("least_weakly_universal={}, layer1={layer1}", rep.least_weakly_universal),
    ));
    out.push(PropertyCheck::new(
        "universal_by_total_minus_one",
        rep.least_universal <= (total as usize).saturating_sub(1).max(1),
        format!("least_universal={}, total={total}", rep.least_universal),
    ));
    out.push(PropertyCheck::new(
        "m2_universal_iff_m2_weakly_universal",
        m2_universal == (rep.least_weakly_universal <= 2),
        format!(
            "least_universal={}, least_weakly_universal={}",
            rep.least_universal, rep.least_weakly_universal
        ),
    ));
    let v_bound = q + u64::from(rep.m_maximal_in_multiplier);
    out.push(PropertyCheck::implies(
        "v_lower_bound",
        !dvr,
        v >= v_bound,
        format!("|V|={v}, bound={v_bound}"),
    ));
    out.push(PropertyCheck::new(
        "m2_universal_iff_m_principal_maximal_in_multiplier",
        m2_universal == (rep.m_principal_in_multiplier && rep.m_maximal_in_multiplier),
        format!(
            "least_universal={}, principal={}, maximal={}",
            rep.least_universal, rep.m_principal_in_multiplier, rep.m_maximal_in_multiplier
        ),
    ));

    // upper bound in M^{k-1} \ M^k whenever M^k is universal
    let deepest = inv.atoms().iter().map(|a| a.layer).max().unwrap_or(1);
    let mut chain = PowerChain::new(spec);
    let mut upper_ok = true;
    let mut upper_detail = Vec::new();
    for kk in rep.least_universal.max(2)..=deepest + 1 {
        let l = chain.graded_dim(kk)?;
        let bound = lines(q, l) - u64::from(kk >= 3);
        let count = inv.layer_count(kk - 1) as u64;
        upper_detail.push(format!("k={kk}: {count}<={bound}"));
        upper_ok &= count <= bound;
    }
    out.push(PropertyCheck::new(
        "universal_layer_upper_bound",
        upper_ok,
        upper_detail.join(", "),
    ));

    out.push(every_nonunit_has_atom_factor(spec, inv)?);
    // x of order d is divisible by any nonunit of order s <= d - n
    let s = (1..n).find(|&j| !spec.coeff_space(j).is_zero()).unwrap_or(n);
    out.push(PropertyCheck::new(
        "atom_order_bound",
        inv.atoms().iter().all(|a| a.form.order < s + n),
        format!(
            "max order {}, bound {}",
            inv.atoms().iter().map(|a| a.form.order).max().unwrap_or(0),
            s + n - 1
        ),
    ));
    out.push(PropertyCheck::new(
        "order_one_classes_are_atoms",
        inv.of_order(1).count() == spec.classes(1)?.forms.len(),
        format!(
            "{} of {}",
            inv.of_order(1).count(),
            spec.classes(1)?.forms.len()
        ),
    ));
    Ok(out)
}

fn every_nonunit_has_atom_factor(spec: &Arc<RingSpec>, inv: &AtomInventory) -> Result<PropertyCheck> {
    let n = spec.n();
    let mut checked = 0usize;
    let mut bad = None;
    'outer: for d in 1..2 * n {
        for x in spec.classes(d)?.forms.iter() {
            checked += 1;
            let ok = inv.atoms().iter().any(|a| {
                a.form.order <= d && spec.window_divides(&a.form.window, a.form.order, &x.window, d)
            });
            if !ok {
                bad = Some(format!("order {d} window {:?}", x.window));
                break 'outer;
            }
        }
    }
    Ok(PropertyCheck::new(
        "every_nonunit_has_atom_factor",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{checked} classes checked")),
    ))
}

/// A closed-form prediction for a recognised ring shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub shape: &'static str,
    pub total: u64,
    pub in_m2: Option<u64>,
}

fn is_field(w: &Subspace) -> Result<bool> {
    Ok(w.contains(1) && w.product_space(w)? == *w)
}

/// Every closed-form atom count that applies to the spec.
pub fn closed_forms(spec: &RingSpec) -> Result<Vec<ClosedForm>> {
    let n = spec.n();
    let q = spec.q();
    let fo = spec.tower().order() as u64;
    let units_mod_k = (fo - 1) / (q - 1);
    let mut out = Vec::new();
    if spec.v().iter().all(|v| v.is_zero()) {
        out.push(ClosedForm {
            shape: "K+F[[X]]X^n",
            total: n as u64 * units_mod_k * fo.pow(n as u32 - 1),
            in_m2: None,
        });
    }
    if n == 1 {
        out.push(ClosedForm {
            shape: "W=F",
            total: units_mod_k,
            in_m2: Some(0),
        });
    }
    if n != 2 {
        return Ok(out);
    }
    let w = spec.coeff_space(1);
    let wo = w.size() as u64;
    if w.is_full() {
        out.push(ClosedForm {
            shape: "W=F",
            total: units_mod_k,
            in_m2: Some(0),
        });
    } else if w.is_zero() {
        out.push(ClosedForm {
            shape: "W=0",
            total: 2 * units_mod_k * fo,
            in_m2: Some(0),
        });
    } else {
        let w2 = w.set_product(w)?;
        let outside = fo - w2.len() as u64;
        let span = w.product_space(w)?;
        let m = outside / (q - 1);
        let m_prime = (span.size() as u64 - w2.len() as u64) / (q - 1);
        let cosets = fo / wo;
        out.push(ClosedForm {
            shape: "0<W<F",
            total: ((wo - 1) / (q - 1) + m) * cosets,
            in_m2: Some(m_prime * cosets),
        });
    }
    if is_field(w)? {
        out.push(ClosedForm {
            shape: "W=L",
            total: units_mod_k * fo / wo,
            in_m2: Some(0),
        });
    }
    Ok(out)
}

/// Compares every applicable closed form, plus the finer descriptions of the
/// case `n = 2`, `0 < W < F`, against the enumeration.
pub fn closed_form_checks(
    spec: &Arc<RingSpec>,
    inv: &AtomInventory,
    rep: &StructureReport,
) -> Result<Vec<PropertyCheck>> {
    let mut out = Vec::new();
    for cf in closed_forms(spec)? {
        let total = inv.total() as u64;
        let in_m2 = inv.in_m2() as u64;
        out.push(PropertyCheck::new(
            "closed_form_count",
            total == cf.total && cf.in_m2.is_none_or(|c| c == in_m2),
            format!(
                "{}: predicted total={} in_m2={:?}, enumerated total={total} in_m2={in_m2}",
                cf.shape, cf.total, cf.in_m2
            ),
        ));
    }
    if spec.n() == 2 {
        let w = spec.coeff_space(1);
        if !w.is_zero() && !w.is_full() {
            let w2 = w.set_product(w)?;
            let span = w.product_space(w)?;
            let mut agree = true;
            for form in spec.classes(2)?.forms.iter() {
                let atom = inv.atoms().iter().any(|a| a.form == *form);
                agree &= atom == !w2.contains(&form.window[0]);
            }
            out.push(PropertyCheck::new(
                "order_two_atom_iff_outside_w2",
                agree,
                format!("|W^2|={}", w2.len()),
            ));
            out.push(PropertyCheck::new(
                "atom_in_m2_iff_w2_below_span",
                (inv.in_m2() > 0) == (w2.len() < span.size()),
                format!("|W^2|={}, |KW^2|={}", w2.len(), span.size()),
            ));
            let full = w2.len() == spec.tower().order() as usize;
            out.push(PropertyCheck::new(
                "m3_universal_iff_w2_is_f",
                is_universal(spec, inv, 3)? == full,
                format!("W^2=F: {full}, least_universal={}", rep.least_universal),
            ));
            out.push(PropertyCheck::new(
                "m4_universal",
                rep.least_universal <= 4,
                format!("least_universal={}", rep.least_universal),
            ));
        }
    }
    Ok(out)
}

/// The full property suite.
pub fn verify(
    spec: &Arc<RingSpec>,
    inv: &AtomInventory,
    rep: &StructureReport,
) -> Result<Vec<PropertyCheck>> {
    let mut out = theorem_checks(spec, inv, rep)?;
    out.extend(closed_form_checks(spec, inv, rep)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::enumerate_atoms;
    use crate::gf::tower_make;
    use crate::ring::spec_validate;
    use crate::ring::tests::small_specs;
    use crate::structure::structure_report;

    fn spec(p: u64, m: u32, e: u32, n: usize, v: &[&[u32]]) -> Arc<RingSpec> {
        let t = Arc::new(tower_make(p, m, e).unwrap());
        let v = v.iter().map(|g| Subspace::span(&t, g).unwrap()).collect();
        spec_validate(&t, n, v).unwrap()
    }

    fn run(r: &Arc<RingSpec>) -> Vec<PropertyCheck> {
        let inv = enumerate_atoms(r).unwrap();
        let rep = structure_report(r, &inv).unwrap();
        verify(r, &inv, &rep).unwrap()
    }

    #[test]
    fn lines_counts() {
        assert_eq!(lines(2, 0), 0);
        assert_eq!(lines(2, 1), 1);
        assert_eq!(lines(2, 3), 7);
        assert_eq!(lines(3, 2), 4);
    }

    #[test]
    fn closed_form_examples() {
        let cf = closed_forms(&spec(2, 1, 3, 2, &[&[1, 2]])).unwrap();
        assert_eq!(
            cf,
            vec![ClosedForm {
                shape: "0<W<F",
                total: 8,
                in_m2: Some(2)
            }]
        );
        let cf = closed_forms(&spec(2, 1, 2, 2, &[&[1]])).unwrap();
        assert_eq!(cf.iter().map(|c| c.total).collect::<Vec<_>>(), vec![6, 6]);
        let cf = closed_forms(&spec(2, 1, 1, 2, &[&[]])).unwrap();
        assert_eq!(cf.iter().map(|c| c.total).collect::<Vec<_>>(), vec![4, 4]);
        let cf = closed_forms(&spec(2, 1, 2, 3, &[&[], &[]])).unwrap();
        assert_eq!(cf[0].total, 3 * 3 * 16);
    }

    #[test]
    fn eight_atom_ring_passes() {
        let checks = run(&spec(2, 1, 3, 2, &[&[1, 2]]));
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(checks.iter().any(|c| c.name == "order_two_atom_iff_outside_w2"));
    }

    #[test]
    fn battery_passes() {
        for r in small_specs() {
            for c in run(&r) {
                assert!(c.passed, "{r:?}: {} {}", c.name, c.detail);
            }
        }
    }
}
