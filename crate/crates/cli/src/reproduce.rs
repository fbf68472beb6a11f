//! The reproduction suite: named checks whose reference values live in a JSON manifest.

use std::collections::{BTreeMap, BTreeSet};

use mackey::algebra::CoefficientRing;
use mackey::burncat::{mackey_algebra_capped, socle_witness_check, BurnsideCategory, Span};
use mackey::burnring::{basis_labels, burnside_algebra, gustafson_form, order_p_sum};
use mackey::fdalg::{gorenstein_battery, symmetric_form_space, unit_retraction_exists, BatteryConfig};
use mackey::grpcore::{is_square_free, prime_factors, Group, Subgroup, SubgroupClassTable};
use mackey::gset::{product, GSetSum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{battery_value, gustafson_value, load_group, presentation_value, rees_values, self_injective_value};
use crate::failure::Failure;
use crate::report::{matches, timed, Record, Status};

pub const DEFAULT_MANIFEST: &str = include_str!("../manifest/reference.json");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    /// free text for readers of the file
    #[allow(dead_code)]
    pub description: String,
    pub checks: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub key: String,
    pub anchor: String,
    pub provenance: String,
    pub kind: Kind,
    pub group: String,
    #[serde(default, rename = "mod")]
    pub modulus: Option<u64>,
    #[serde(default)]
    pub degree: Option<usize>,
    pub expected: Value,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// relations over `Z` and `F_p`, socle, generator substitution
    BurnsidePresentation,
    /// `f∘g` and `f∘s` for `f = [G/G <- G/H -id-> G/H]`, Hom dimensions, self-injectivity
    TopComposites,
    /// self-injectivity at each prime and the Ext battery
    Dichotomy,
    /// Gram matrix, certificate and induction compatibility
    Gustafson,
    /// symmetric forms on `F_pB(G)` and the unit retraction of `μ_Z(G)`
    FormHypotheses,
    /// change-of-rings comparison on `ZB(G)`
    Rees,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, Failure> {
        let m: Manifest = serde_json::from_str(text)
            .map_err(|e| Failure::input(format!("manifest line {}, column {}: {e}", e.line(), e.column())))?;
        let mut seen = BTreeSet::new();
        for c in &m.checks {
            if !seen.insert(c.key.as_str()) {
                return Err(Failure::input(format!("manifest lists `{}` twice", c.key)));
            }
            if !c.expected.is_object() {
                return Err(Failure::input(format!("manifest entry `{}`: expected values must be an object", c.key)));
            }
        }
        Ok(m)
    }
}

/// Runs every manifest entry in order. Errors inside one entry become that record's status.
pub fn run(manifest: &Manifest, cap: usize, clock: bool) -> Result<Vec<Record>, Failure> {
    manifest.checks.iter().map(|e| run_entry(e, cap, clock)).collect()
}

fn run_entry(entry: &Entry, cap: usize, clock: bool) -> Result<Record, Failure> {
    timed(clock, || {
        let computed = load_group(&entry.group, cap).and_then(|g| compute(entry, &g, cap));
        let mut record = Record::computed(&entry.key, Value::Null);
        record.anchor = entry.anchor.clone();
        record.provenance = entry.provenance.clone();
        record.expected = entry.expected.clone();
        match computed {
            Ok(v) => {
                record.status = if matches(&v, &entry.expected) { Status::Pass } else { Status::Fail };
                record.computed = v;
            }
            Err(e) if e.is_resource() => {
                record.status = Status::Inconclusive;
                record.error = Some(e.message);
            }
            Err(e) if e.code == crate::failure::EXIT_INPUT => return Err(e),
            Err(e) => {
                record.status = Status::Fail;
                record.error = Some(e.message);
            }
        }
        Ok(record)
    })
}

fn compute(entry: &Entry, group: &Group, cap: usize) -> Result<Value, Failure> {
    let p = || entry.modulus.ok_or_else(|| Failure::input(format!("manifest entry `{}` needs `mod`", entry.key)));
    match entry.kind {
        Kind::BurnsidePresentation => {
            let p = p()?;
            Ok(json!({
                "over_z": presentation_value(group, CoefficientRing::Integers)?,
                "mod_p": presentation_value(group, CoefficientRing::prime_field(p)?)?,
            }))
        }
        Kind::TopComposites => top_composites(group, p()?, cap),
        Kind::Dichotomy => dichotomy(group, cap),
        Kind::Gustafson => {
            let mut v = gustafson_value(group, CoefficientRing::Integers);
            let by_prime: BTreeMap<String, bool> = prime_factors(group.order() as u64)
                .into_iter()
                .map(|q| {
                    let t = SubgroupClassTable::new(group);
                    (q.to_string(), gustafson_form(&t, CoefficientRing::PrimeField(q)).is_nondegenerate())
                })
                .collect();
            v["nondegenerate_mod"] = json!(by_prime);
            Ok(v)
        }
        Kind::FormHypotheses => form_hypotheses(group, cap),
        Kind::Rees => {
            let rows = rees_values(group, p()?, entry.degree.unwrap_or(3))?;
            let all_equal = rows.iter().all(|(_, e)| *e);
            Ok(json!({ "degrees": rows.into_iter().map(|(v, _)| v).collect::<Vec<_>>(), "all_equal": all_equal }))
        }
    }
}

fn top_composites(group: &Group, p: u64, cap: usize) -> Result<Value, Failure> {
    let cat = BurnsideCategory::new(group);
    let t = cat.table();
    let top = t.whole_class();
    let h = (0..t.len())
        .find(|&c| t.class(c).order() as u64 == p)
        .ok_or_else(|| Failure::input(format!("{} has no subgroup of order {p}", group.name())))?;
    let span = |l: &Subgroup| cat.canonicalize_span(top, top, l, 0, 0);
    let f = cat.canonicalize_span(top, h, t.representative(h), 0, 0)?;
    let g = span(&Subgroup::trivial())?;

    // s = Σ_{|K|=p} [G/G <- G/K -> G/G], one term per subgroup
    let weights = order_p_sum(t, p);
    let compose_s = |ring: CoefficientRing| -> Result<Vec<(Span, i64)>, Failure> {
        let mut acc: BTreeMap<Span, i64> = BTreeMap::new();
        for (c, &w) in weights.iter().enumerate().filter(|(_, &w)| w != 0) {
            for (sp, k) in cat.compose(&f, &span(t.representative(c))?)? {
                *acc.entry(sp).or_default() += w * k;
            }
        }
        Ok(acc.into_iter().map(|(s, c)| (s, ring.reduce(c))).filter(|&(_, c)| c != 0).collect())
    };
    let mut composites = BTreeMap::new();
    let mut vanishing = BTreeMap::new();
    for q in [None, Some(2), Some(3)] {
        let ring = CoefficientRing::from_modulus(q)?;
        let fg = cat.compose_in(&f, &g, ring)?;
        let fs = compose_s(ring)?;
        match q {
            None => {
                composites.insert("fg", cat.render_combination(&fg));
                composites.insert("fs", cat.render_combination(&fs));
            }
            Some(q) => {
                vanishing.insert(q.to_string(), fg.is_empty() && fs.is_empty());
            }
        }
    }

    let mut hom_dims = BTreeMap::new();
    let mut law = true;
    for c in 0..t.len() {
        let dim = cat.hom_basis(top, c).len();
        let rank = SubgroupClassTable::new(&group.subgroup_as_group(t.representative(c)).0).len();
        law &= dim == rank;
        hom_dims.insert(format!("G/{}", t.label(c)), dim);
    }

    let labels = basis_labels(t);
    let mut products = BTreeMap::new();
    for k in (0..t.len()).filter(|&k| t.class(k).order() as u64 == p) {
        let x = product(t, &GSetSum::basis(t, h), &GSetSum::basis(t, k))?;
        let terms: Vec<String> = x
            .multiplicities()
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(c, &m)| if m == 1 { labels[c].clone() } else { format!("{m} * {}", labels[c]) })
            .collect();
        products.insert(format!("G/{} x G/{}", t.label(h), t.label(k)), terms.join(" + "));
    }

    let (_, self_injective) = self_injective_value(group, p, cap)?;
    let witnesses = socle_witness_check(&cat, p)?;
    Ok(json!({
        "f": cat.render_annotated(&f),
        "composites_over_z": composites,
        "composites_vanish_mod": vanishing,
        "hom_dims_from_top": hom_dims,
        "hom_dims_match_burnside_ranks": law,
        "products": products,
        "self_injective_mod_p": self_injective,
        "socle_witnesses_obstruct": witnesses.obstructs_self_injectivity(),
    }))
}

fn dichotomy(group: &Group, cap: usize) -> Result<Value, Failure> {
    let order = group.order() as u64;
    let mut self_injective = BTreeMap::new();
    for p in prime_factors(order) {
        self_injective.insert(p.to_string(), self_injective_value(group, p, cap)?.1);
    }
    let battery = gorenstein_battery(group, &BatteryConfig { cap, ..BatteryConfig::default() })?;
    Ok(json!({
        "order": order,
        "square_free": is_square_free(order),
        "self_injective_mod": self_injective,
        "battery": battery_value(&battery),
        "battery_holds": battery.holds,
    }))
}

fn form_hypotheses(group: &Group, cap: usize) -> Result<Value, Failure> {
    let t = SubgroupClassTable::new(group);
    let mut forms = BTreeMap::new();
    for p in prime_factors(group.order() as u64) {
        let space = symmetric_form_space(&burnside_algebra(&t, CoefficientRing::PrimeField(p)))?;
        forms.insert(p.to_string(), space.exists_nondegenerate);
    }
    let cat = BurnsideCategory::from_table(t);
    let muz = mackey_algebra_capped(&cat, CoefficientRing::Integers, cap)?;
    Ok(json!({
        "nondegenerate_form_on_burnside_mod": forms,
        "unit_retraction": unit_retraction_exists(muz.algebra()),
    }))
}
