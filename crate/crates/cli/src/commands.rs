//! One function per subcommand. Each returns the records of its report.

use std::collections::BTreeMap;

use mackey::algebra::{CoefficientRing, StructuredAlgebra};
use mackey::burncat::{mackey_algebra_capped, socle_witness_check, BurnsideCategory, Span};
use mackey::burnring::{
    basis_labels, burnside_algebra, form_certificate, gustafson_form, letters, modp_burnside_socle, order_p_sum,
    relations, render_combination, rognerud_compatibility,
};
use mackey::fdalg::{gorenstein_battery, is_self_injective, radical, rees_reduction_check, BatteryConfig, LeftModule};
use mackey::grpcore::{is_square_free, prime_power_base, Group, GroupSpec, SubgroupClassTable};
use mackey::gset::table_of_marks;
use serde_json::{json, Value};

use crate::failure::Failure;
use crate::report::{Record, Status};

pub type Records = Result<Vec<Record>, Failure>;

pub fn load_group(spec: &str, cap: usize) -> Result<Group, Failure> {
    Ok(Group::build(&GroupSpec::parse(spec)?, cap)?)
}

pub fn ring(modulus: Option<u64>) -> Result<CoefficientRing, Failure> {
    Ok(CoefficientRing::from_modulus(modulus)?)
}

pub fn require_mod(modulus: Option<u64>) -> Result<u64, Failure> {
    modulus.ok_or_else(|| Failure::input("this command needs --mod <p>"))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

pub fn group_info(group: &Group) -> Records {
    let t = SubgroupClassTable::new(group);
    let summary = json!({
        "name": group.name(),
        "order": group.order(),
        "abelian": group.is_abelian(),
        "square_free": is_square_free(group.order() as u64),
        "subgroups": t.subgroup_count(),
        "subgroup_classes": t.len(),
    });
    let classes: Vec<Value> = t
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "label": t.label(i),
                "order": c.order(),
                "size": c.size(),
                "normalizer_order": c.normalizer.order(),
                "representative": c.representative.elements(),
            })
        })
        .collect();
    Ok(vec![Record::computed("group", summary), Record::computed("subgroup-classes", Value::Array(classes))])
}

pub fn burnside_table(group: &Group, ring: CoefficientRing) -> Records {
    let t = SubgroupClassTable::new(group);
    let alg = burnside_algebra(&t, ring);
    let names = letters(&t);
    let basis: Vec<String> = basis_labels(&t).iter().zip(&names).map(|(b, l)| format!("{l} = {b}")).collect();
    let rows: Vec<Value> = (0..alg.dim())
        .map(|i| Value::Array((0..alg.dim()).map(|j| Value::String(render_combination(&names, alg.product(i, j)))).collect()))
        .collect();
    let marks = table_of_marks(&t);
    Ok(vec![
        Record::computed("basis", json!({ "ring": ring.to_string(), "letters": basis })),
        Record::computed("multiplication", json!({ "rows": names, "table": rows })),
        Record::computed("table-of-marks", json!({ "classes": (0..t.len()).map(|c| t.label(c)).collect::<Vec<_>>(), "marks": marks.entries() })),
    ])
}

pub fn presentation_value(group: &Group, ring: CoefficientRing) -> Result<Value, Failure> {
    let t = SubgroupClassTable::new(group);
    let alg = burnside_algebra(&t, ring);
    let names = letters(&t);
    let rels: Vec<String> = relations(&t, &alg).into_iter().map(|r| format!("{} = {}", r.lhs, r.rhs)).collect();
    let mut out = json!({ "ring": ring.to_string(), "relations": rels });
    let p = ring.characteristic();
    let order = group.order() as u64;
    if p == 0 || order == 1 || prime_power_base(order) != Some(p) {
        return Ok(out);
    }
    let socle = modp_burnside_socle(&t, p)?;
    let socle_basis: Vec<String> = socle.socle.basis_vecs().iter().map(|v| render_combination(&names, &sparse(&alg.from_fp(v)))).collect();
    out["socle"] = json!(socle_basis);
    out["socle_dim"] = json!(socle.dim());
    if let Some(sub) = substituted(&t, &alg, &names, p) {
        out["substitution"] = sub;
    }
    Ok(out)
}

/// Replaces the last order-`p` letter by `s = Σ_{|H|=p} [G/H]` and lists the products of
/// the new generators, when there are at least two classes of order `p`.
fn substituted(t: &SubgroupClassTable, alg: &StructuredAlgebra, names: &[String], p: u64) -> Option<Value> {
    let ring = alg.ring();
    let order_p: Vec<usize> = (0..t.len()).filter(|&c| t.class(c).order() as u64 == p).collect();
    if order_p.len() < 2 {
        return None;
    }
    let s: Vec<i64> = order_p_sum(t, p).into_iter().map(|c| ring.reduce(c)).collect();
    let mut gens: Vec<(String, Vec<i64>)> =
        order_p[..order_p.len() - 1].iter().map(|&c| (names[c].clone(), alg.basis_vector(c))).collect();
    gens.push(("s".into(), s.clone()));
    let mut squares = Vec::new();
    let mut mixed = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let prod = alg.mul(&gens[i].1, &gens[j].1);
            let lhs = if i == j { format!("{}^2", gens[i].0) } else { format!("{}{}", gens[i].0, gens[j].0) };
            if i == j { &mut squares } else { &mut mixed }.push((lhs, render_combination(names, &sparse(&prod))));
        }
    }
    let all: Vec<(String, String)> = squares.into_iter().chain(mixed).collect();
    let zero: Vec<&str> = all.iter().filter(|(_, r)| r == "0").map(|(l, _)| l.as_str()).collect();
    let nonzero: Vec<String> = all.iter().filter(|(_, r)| r != "0").map(|(l, r)| format!("{l} = {r}")).collect();
    Some(json!({
        "s": render_combination(names, &sparse(&s)),
        "vanishing": if zero.is_empty() { String::new() } else { format!("{} = 0", zero.join(" = ")) },
        "nonzero": nonzero,
    }))
}

fn sparse(v: &[i64]) -> Vec<(usize, i64)> {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

pub fn burnside_present(group: &Group, ring: CoefficientRing) -> Records {
    Ok(vec![Record::computed("presentation", presentation_value(group, ring)?)])
}

pub fn gustafson_value(group: &Group, ring: CoefficientRing) -> Value {
    let t = SubgroupClassTable::new(group);
    let form = gustafson_form(&t, ring);
    let cert = form_certificate(&burnside_algebra(&t, ring), &form);
    json!({
        "ring": ring.to_string(),
        "basis": basis_labels(&t),
        "gram": form.gram(),
        "determinant": form.determinant().to_string(),
        "certificate": to_value(&cert),
        "rognerud_compatible": rognerud_compatibility(&t, ring),
    })
}

pub fn gustafson(group: &Group, ring: CoefficientRing) -> Records {
    let v = gustafson_value(group, ring);
    let holds = v["certificate"].as_object().is_some_and(|c| c.values().all(|x| x == true));
    Ok(vec![Record::computed("gustafson-form", v).with_finding(holds)])
}

pub fn mackey_dim(group: &Group, ring: CoefficientRing, cap: usize) -> Records {
    let cat = BurnsideCategory::new(group);
    let mu = mackey_algebra_capped(&cat, ring, cap)?;
    let t = cat.table();
    let mut hom = BTreeMap::new();
    for h in 0..t.len() {
        for k in 0..t.len() {
            hom.insert(format!("G/{} -> G/{}", t.label(h), t.label(k)), cat.hom_basis(h, k).len());
        }
    }
    Ok(vec![Record::computed("mackey-algebra", json!({ "ring": ring.to_string(), "dim": mu.dim(), "hom_dims": hom }))])
}

fn class_by_label(t: &SubgroupClassTable, label: &str) -> Result<usize, Failure> {
    let label = label.trim().trim_start_matches("G/");
    (0..t.len())
        .find(|&c| t.label(c) == label)
        .ok_or_else(|| Failure::input(format!("unknown subgroup class `{label}`; classes are {}", labels(t))))
}

fn labels(t: &SubgroupClassTable) -> String {
    (0..t.len()).map(|c| t.label(c)).collect::<Vec<_>>().join(", ")
}

/// Reads `[G/A <- G/B -> G/C]` or `A,B,C[,u,v]` into a canonical span.
pub fn parse_span(cat: &BurnsideCategory, text: &str) -> Result<Span, Failure> {
    let t = cat.table();
    let bad = || Failure::input(format!("cannot read span `{text}`; write `[G/H <- G/L -> G/K]` or `H,L,K`"));
    let trimmed = text.trim();
    let parts: Vec<String> = if trimmed.starts_with('[') {
        let inner = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
        let (left, rest) = inner.split_once("<-").ok_or_else(bad)?;
        let (mid, right) = rest.split_once("->").ok_or_else(bad)?;
        let mid = mid.trim();
        let mid = mid.strip_suffix("-id").or_else(|| mid.strip_suffix("-proj")).unwrap_or(mid);
        vec![left.into(), mid.into(), right.into()]
    } else {
        trimmed.split(',').map(String::from).collect()
    };
    if parts.len() != 3 && parts.len() != 5 {
        return Err(bad());
    }
    let (source, middle, target) = (class_by_label(t, &parts[0])?, class_by_label(t, &parts[1])?, class_by_label(t, &parts[2])?);
    let (u, v) = if parts.len() == 5 {
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        (num(&parts[3])?, num(&parts[4])?)
    } else {
        (0, 0)
    };
    Ok(cat.canonicalize_span(source, target, t.representative(middle), u, v)?)
}

pub fn mackey_compose(group: &Group, ring: CoefficientRing, left: &str, right: &str) -> Records {
    let cat = BurnsideCategory::new(group);
    let (f, g) = (parse_span(&cat, left)?, parse_span(&cat, right)?);
    let composite = cat.compose_in(&f, &g, ring)?;
    Ok(vec![Record::computed(
        "composite",
        json!({
            "ring": ring.to_string(),
            "left": cat.render_annotated(&f),
            "right": cat.render_annotated(&g),
            "left_after_right": cat.render_combination(&composite),
        }),
    )])
}

pub fn self_injective_value(group: &Group, p: u64, cap: usize) -> Result<(Value, bool), Failure> {
    let ring = CoefficientRing::prime_field(p)?;
    let cat = BurnsideCategory::new(group);
    let mu = mackey_algebra_capped(&cat, ring, cap)?;
    let rad = radical(mu.algebra())?;
    let answer = is_self_injective(mu.algebra())?;
    Ok((json!({ "ring": ring.to_string(), "algebra_dim": mu.dim(), "radical_dim": rad.dim(), "self_injective": answer }), answer))
}

pub fn check_self_injective(group: &Group, p: u64, cap: usize) -> Records {
    let (v, answer) = self_injective_value(group, p, cap)?;
    let mut out = vec![Record::computed("self-injective", v).with_finding(answer)];
    let order = group.order() as u64;
    if prime_power_base(order) == Some(p) && order > p {
        let cat = BurnsideCategory::new(group);
        let report = socle_witness_check(&cat, p)?;
        let obstructs = report.obstructs_self_injectivity();
        // a witness pair in the socle of μ e_G contradicts self-injectivity
        let status = if obstructs && answer { Status::Fail } else { Status::Pass };
        out.push(Record::computed("socle-witnesses", to_value(&report)).with_finding(obstructs).with_status(status));
    }
    Ok(out)
}

pub fn check_gorenstein(group: &Group, degree: Option<usize>, cap: usize) -> Records {
    let mut config = BatteryConfig { cap, ..BatteryConfig::default() };
    if let Some(d) = degree {
        if d == 0 {
            return Err(Failure::input("--degree must be at least 1"));
        }
        config.min_degree = config.min_degree.min(d);
        config = config.with_bound(d);
    }
    let report = gorenstein_battery(group, &config)?;
    let status = if report.holds { Status::Pass } else { Status::Fail };
    Ok(vec![Record::computed("gorenstein-battery", battery_value(&report)).with_finding(report.holds).with_status(status)])
}

pub fn battery_value(report: &mackey::fdalg::BatteryReport) -> Value {
    let ext: Vec<String> = report
        .ext
        .iter()
        .map(|e| format!("p={} {} (dim {}): Ext^{} = {}", e.p, e.module.name(), e.module_dim, e.degree, e.ext))
        .collect();
    let si: BTreeMap<String, bool> = report.self_injectivity.iter().map(|e| (e.p.to_string(), e.self_injective)).collect();
    json!({
        "group": report.group,
        "order": report.order,
        "square_free": report.square_free,
        "ext": ext,
        "self_injective_mod": si,
        "holds": report.holds,
    })
}

/// `Ext^{i+1}` over `ZB(G)` against `Ext^i` over `F_pB(G)`, for the residue module at `[G/G]`.
pub fn rees_values(group: &Group, p: u64, degree: usize) -> Result<Vec<(Value, bool)>, Failure> {
    let t = SubgroupClassTable::new(group);
    let z = burnside_algebra(&t, CoefficientRing::Integers);
    let fp = burnside_algebra(&t, CoefficientRing::prime_field(p)?);
    let n = LeftModule::residue(&fp, t.whole_class())?;
    (1..=degree)
        .map(|i| {
            let c = rees_reduction_check(&z, &n, i)?;
            let v = json!({
                "degree": i,
                "integral_ext": c.lhs.to_string(),
                "lhs_dim": c.lhs_dim,
                "rhs_dim": c.rhs_dim,
                "equal": c.equal,
            });
            Ok((v, c.equal))
        })
        .collect()
}

pub fn check_rees(group: &Group, p: u64, degree: Option<usize>) -> Records {
    let degree = degree.unwrap_or(3);
    if degree == 0 {
        return Err(Failure::input("--degree must be at least 1"));
    }
    Ok(rees_values(group, p, degree)?
        .into_iter()
        .map(|(v, equal)| {
            let name = format!("rees-degree-{}", v["degree"]);
            Record::computed(&name, v).with_finding(equal).with_status(if equal { Status::Pass } else { Status::Fail })
        })
        .collect())
}
