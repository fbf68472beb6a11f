//! One PASS/FAIL line per acceptance criterion. Runs without the test harness so the lines
//! always reach stdout; the process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use mackey::algebra::{CoefficientRing, StructuredAlgebra};
use mackey::burncat::{mackey_algebra, BurnsideCategory, Span};
use mackey::burnring::{
    burnside_algebra, form_certificate, gustafson_form, modp_burnside_socle, relations, rognerud_compatibility,
};
use mackey::fdalg::{
    corner_projective, gorenstein_battery, is_self_injective, rees_reduction_check, semisimple_top,
    symmetric_form_space, unit_retraction_exists, BatteryConfig, Decision, GeneratorOrder, LeftModule, Resolution,
};
use mackey::grpcore::{Group, Subgroup, SubgroupClassTable};
use mackey::gset::{product, table_of_marks, GSetSum};
use mackey::linalg::int::int;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const Z: CoefficientRing = CoefficientRing::Integers;

fn fp(p: u64) -> CoefficientRing {
    CoefficientRing::prime_field(p).unwrap()
}

fn group(spec: &str) -> Group {
    Group::parse(spec).unwrap()
}

fn table(spec: &str) -> SubgroupClassTable {
    SubgroupClassTable::new(&group(spec))
}

fn category(spec: &str) -> BurnsideCategory {
    BurnsideCategory::new(&group(spec))
}

fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn relation_text(t: &SubgroupClassTable, alg: &StructuredAlgebra) -> BTreeMap<String, String> {
    relations(t, alg).into_iter().map(|r| (r.lhs, r.rhs)).collect()
}

fn burnside_c4_relations() -> Outcome {
    let t = table("cyclic:4");
    let alg = burnside_algebra(&t, Z);
    let (g, h) = (alg.basis_vector(0), alg.basis_vector(1));
    ensure!(alg.mul(&g, &g) == alg.scale(4, &g), "g^2 != 4g");
    ensure!(alg.mul(&h, &h) == alg.scale(2, &h), "h^2 != 2h");
    ensure!(alg.mul(&g, &h) == alg.scale(2, &g), "gh != 2g");
    let text: Vec<String> = relations(&t, &alg).iter().map(|r| format!("{} = {}", r.lhs, r.rhs)).collect();
    ensure!(text == ["g^2 = 4g", "gh = 2g", "h^2 = 2h"], "rendered relations {text:?}");
    Ok(())
}

fn burnside_c4_socle() -> Outcome {
    let t = table("cyclic:4");
    let s = modp_burnside_socle(&t, 2).map_err(|e| e.to_string())?;
    ensure!(s.dim() == 2, "socle dimension {}", s.dim());
    ensure!(s.contains(&[1, 0, 0]) && s.contains(&[0, 1, 0]), "g or h missing from the socle");
    ensure!(!s.contains(&[0, 0, 1]), "unit in the socle");
    Ok(())
}

fn burnside_klein() -> Outcome {
    let t = table("klein");
    let z = burnside_algebra(&t, Z);
    let rels = relation_text(&t, &z);
    for l in ["hk", "hℓ", "kℓ"] {
        ensure!(rels.get(l).map(String::as_str) == Some("g"), "{l} = {:?}", rels.get(l));
    }
    let f2 = burnside_algebra(&t, fp(2));
    let (h, k) = (f2.basis_vector(1), f2.basis_vector(2));
    let s = vec![0, 1, 1, 1, 0];
    for (name, x, y) in [("h^2", &h, &h), ("k^2", &k, &k), ("s^2", &s, &s), ("hs", &h, &s), ("ks", &k, &s)] {
        ensure!(is_zero(&f2.mul(x, y)), "{name} != 0 mod 2");
    }
    let soc = modp_burnside_socle(&t, 2).map_err(|e| e.to_string())?;
    let hk = f2.mul(&h, &k);
    ensure!(soc.dim() == 2 && soc.contains(&s) && soc.contains(&hk), "socle is not span{{s, hk}}");
    Ok(())
}

fn c4_composites() -> Outcome {
    let c = category("cyclic:4");
    let (h, top) = (1, 2);
    let hrep = c.table().representative(h).clone();
    let triv = Subgroup::trivial();
    let span = |s, t, l: &Subgroup| c.canonicalize_span(s, t, l, 0, 0).unwrap();
    let f = span(top, h, &hrep);
    let g = span(top, top, &triv);
    let s = span(top, top, &hrep);
    let via_free = span(top, h, &triv);
    let fg = c.compose(&f, &g).map_err(|e| e.to_string())?;
    ensure!(fg == vec![(via_free.clone(), 2)], "f∘g = {}", c.render_combination(&fg));
    let fs = c.compose(&f, &s).map_err(|e| e.to_string())?;
    ensure!(fs == vec![(f.clone(), 2)], "f∘s = {}", c.render_combination(&fs));
    for (x, name) in [(&g, "g"), (&s, "s")] {
        ensure!(c.compose_in(&f, x, fp(2)).unwrap().is_empty(), "f∘{name} nonzero mod 2");
        ensure!(!c.compose_in(&f, x, fp(3)).unwrap().is_empty(), "f∘{name} zero mod 3");
    }
    Ok(())
}

fn klein_composites() -> Outcome {
    let c = category("klein");
    let t = c.table();
    let top = t.whole_class();
    let triv = Subgroup::trivial();
    let span = |s, tg, l: &Subgroup| c.canonicalize_span(s, tg, l, 0, 0).unwrap();
    let f1 = span(top, 1, t.representative(1));
    let g = span(top, top, &triv);
    let via_free = span(top, 1, &triv);
    ensure!(c.compose(&f1, &g).unwrap() == vec![(via_free.clone(), 2)], "f1∘g");
    let mut fs: BTreeMap<Span, i64> = BTreeMap::new();
    for h in 1..4 {
        for (sp, k) in c.compose(&f1, &span(top, top, t.representative(h))).unwrap() {
            *fs.entry(sp).or_default() += k;
        }
    }
    let mut expect = vec![(f1, 2), (via_free, 2)];
    expect.sort();
    ensure!(fs.into_iter().collect::<Vec<_>>() == expect, "f1∘s");

    let basis = |i| GSetSum::basis(t, i);
    let hh = product(t, &basis(1), &basis(1)).unwrap();
    ensure!(hh.multiplicities() == [0, 2, 0, 0, 0], "G/H × G/H = {:?}", hh.multiplicities());
    let hk = product(t, &basis(1), &basis(2)).unwrap();
    ensure!(hk.multiplicities() == [1, 0, 0, 0, 0], "G/H × G/K = {:?}", hk.multiplicities());
    Ok(())
}

fn hom_dimension_law() -> Outcome {
    for spec in ["cyclic:4", "klein", "sym:3"] {
        let c = category(spec);
        let t = c.table();
        for h in 0..t.len() {
            let (hg, _) = t.group().subgroup_as_group(t.representative(h));
            let rank = SubgroupClassTable::new(&hg).len();
            let dim = c.hom_basis(t.whole_class(), h).len();
            ensure!(dim == rank, "{spec}: Hom(G/G, G/{}) has dimension {dim}, B(H) has rank {rank}", t.label(h));
        }
    }
    Ok(())
}

fn self_injectivity_dichotomy() -> Outcome {
    for (spec, expected) in [("cyclic:4", false), ("klein", false), ("cyclic:2", true), ("cyclic:6", true), ("sym:3", true)] {
        let mu = mackey_algebra(&category(spec), fp(2)).unwrap();
        let got = is_self_injective(mu.algebra()).map_err(|e| e.to_string())?;
        ensure!(got == expected, "{spec}: self-injective = {got}");
    }
    Ok(())
}

fn gustafson_certificates() -> Outcome {
    for spec in ["cyclic:6", "sym:3"] {
        let t = table(spec);
        let cert = form_certificate(&burnside_algebra(&t, Z), &gustafson_form(&t, Z));
        ensure!(cert.symmetric && cert.associative && cert.nondegenerate, "{spec}: {cert:?}");
        let det = gustafson_form(&t, Z).determinant();
        ensure!(det == int(1) || det == int(-1), "{spec}: determinant {det}");
        ensure!(rognerud_compatibility(&t, Z), "{spec}: induction compatibility");
    }
    let det = gustafson_form(&table("cyclic:4"), Z).determinant();
    ensure!(det == int(0), "cyclic:4: determinant {det}");
    // Klein: degenerate mod 2 but not over Z; the Gram matrix multiplied out by hand
    let klein = gustafson_form(&table("klein"), Z);
    let by_hand = [[4, 2, 2, 2, 1], [2, 0, 1, 1, 0], [2, 1, 0, 1, 0], [2, 1, 1, 0, 0], [1, 0, 0, 0, 0]];
    ensure!(klein.gram().iter().zip(&by_hand).all(|(r, e)| r == e), "klein Gram {:?}", klein.gram());
    ensure!(klein.determinant() == int(-2), "klein: determinant {}", klein.determinant());
    ensure!(!gustafson_form(&table("klein"), fp(2)).is_nondegenerate(), "klein: nondegenerate mod 2");
    Ok(())
}

fn form_hypotheses() -> Outcome {
    for spec in ["cyclic:2", "cyclic:3", "cyclic:6", "sym:3"] {
        let c = category(spec);
        let mu = mackey_algebra(&c, Z).unwrap();
        ensure!(unit_retraction_exists(mu.algebra()), "{spec}: no unit retraction");
        for p in mackey::grpcore::prime_factors(c.group().order() as u64) {
            let space = symmetric_form_space(&burnside_algebra(c.table(), fp(p))).map_err(|e| e.to_string())?;
            ensure!(space.exists_nondegenerate == Decision::Yes, "{spec} mod {p}: {:?}", space.exists_nondegenerate);
        }
    }
    let space = symmetric_form_space(&burnside_algebra(&table("cyclic:4"), fp(2))).unwrap();
    ensure!(space.exists_nondegenerate == Decision::No, "F2B(C4): {:?}", space.exists_nondegenerate);
    Ok(())
}

fn rees_and_battery() -> Outcome {
    let z = burnside_algebra(&table("cyclic:4"), Z);
    let n = LeftModule::residue(&z.reduce_mod(fp(2)), 2).unwrap();
    for i in 1..=3 {
        let r = rees_reduction_check(&z, &n, i).map_err(|e| e.to_string())?;
        ensure!(r.equal, "degree {i}: {} vs {}", r.lhs_dim, r.rhs_dim);
    }
    for spec in ["cyclic:2", "cyclic:3", "cyclic:6", "sym:3"] {
        let report = gorenstein_battery(&group(spec), &BatteryConfig::default()).map_err(|e| e.to_string())?;
        ensure!(report.holds && !report.ext.is_empty(), "{spec}: battery {:?}", report.ext);
    }
    Ok(())
}

/// Structure constants from the table of marks, by back substitution.
fn constants_from_marks(t: &SubgroupClassTable, i: usize, j: usize) -> Vec<i64> {
    let m = table_of_marks(t);
    let n = t.len();
    let mut c = vec![0i64; n];
    for k in (0..n).rev() {
        let rhs = m.mark(k, i) * m.mark(k, j) - (k + 1..n).map(|x| c[x] * m.mark(k, x)).sum::<i64>();
        assert_eq!(rhs % m.mark(k, k), 0);
        c[k] = rhs / m.mark(k, k);
    }
    c
}

fn property_suites() -> Outcome {
    for spec in ["cyclic:2", "cyclic:4", "klein", "sym:3", "cyclic:6", "dihedral:4", "sym:4"] {
        let t = table(spec);
        let alg = burnside_algebra(&t, Z);
        for i in 0..t.len() {
            for j in 0..t.len() {
                let x = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j));
                ensure!(x == constants_from_marks(&t, i, j), "{spec}: marks disagree on ({i}, {j})");
            }
        }
    }
    for spec in ["cyclic:2", "cyclic:4", "klein", "sym:3"] {
        let mu = mackey_algebra(&category(spec), Z).unwrap();
        mu.algebra().verify().map_err(|e| format!("{spec}: {e}"))?;
    }
    for spec in ["cyclic:2", "cyclic:4", "klein", "sym:3"] {
        canonicalization_property(spec)?;
    }
    let pairs = {
        let (c4, s3, c2) = (category("cyclic:4"), category("sym:3"), category("cyclic:2"));
        let mu4 = mackey_algebra(&c4, fp(2)).unwrap();
        let mus3 = mackey_algebra(&s3, fp(3)).unwrap();
        let mu2 = mackey_algebra(&c2, fp(2)).unwrap();
        let (a4, as3, a2) = (mu4.algebra().clone(), mus3.algebra().clone(), mu2.algebra().clone());
        let e3 = mus3.idempotent(s3.table().whole_class());
        let e2 = mu2.idempotent(c2.table().whole_class());
        vec![
            (a4.clone(), semisimple_top(&a4).unwrap(), LeftModule::regular(&a4).unwrap()),
            (as3.clone(), corner_projective(&as3, e3).unwrap(), semisimple_top(&as3).unwrap()),
            (a2.clone(), LeftModule::residue(&a2, e2).unwrap(), LeftModule::regular(&a2).unwrap()),
        ]
    };
    for (k, (alg, m, n)) in pairs.iter().enumerate() {
        let fwd = Resolution::new(alg, m, 4, GeneratorOrder::Forward).unwrap();
        let rev = Resolution::new(alg, m, 4, GeneratorOrder::Reverse).unwrap();
        for i in 0..4 {
            let (a, b) = (fwd.ext_dim(n, i).unwrap(), rev.ext_dim(n, i).unwrap());
            ensure!(a == b, "pair {k}, degree {i}: {a} vs {b}");
        }
    }
    Ok(())
}

/// Canonical forms are fixed by canonicalization and unchanged by conjugating the middle
/// and moving the leg representatives within their cosets.
fn canonicalization_property(spec: &str) -> Outcome {
    let c = category(spec);
    let g = c.group().clone();
    let t = c.table();
    let spans: Vec<Span> =
        (0..t.len()).flat_map(|a| (0..t.len()).map(move |b| (a, b))).flat_map(|(a, b)| c.hom_basis(a, b)).collect();
    let strategy = (0..spans.len(), 0..g.order(), any::<prop::sample::Index>(), any::<prop::sample::Index>());
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |(i, x, hi, ki)| {
            let s = &spans[i];
            prop_assert_eq!(&c.canonicalize(s).unwrap(), s);
            let h = t.representative(s.source).elements();
            let k = t.representative(s.target).elements();
            let (u, v) = (g.mul(g.mul(x, s.u), h[hi.index(h.len())]), g.mul(g.mul(x, s.v), k[ki.index(k.len())]));
            let moved = c.canonicalize_span(s.source, s.target, &s.middle.conjugate_by(&g, x), u, v).unwrap();
            prop_assert_eq!(&moved, s);
            Ok(())
        })
        .map_err(|e| format!("{spec}: {e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("ZB(C4) relations g^2 = 4g, h^2 = 2h, gh = 2g", burnside_c4_relations),
        ("F2B(C4) socle is span{g, h}", burnside_c4_socle),
        ("ZB(Klein) relations, mod-2 substitution and socle", burnside_klein),
        ("C4 composites f∘g and f∘s", c4_composites),
        ("Klein composites and orbit decompositions", klein_composites),
        ("Hom(G/G, G/H) has the rank of B(H)", hom_dimension_law),
        ("self-injectivity dichotomy at p = 2", self_injectivity_dichotomy),
        ("Gustafson certificates", gustafson_certificates),
        ("unit retraction and nondegenerate forms", form_hypotheses),
        ("change-of-rings instances and Ext^2 battery", rees_and_battery),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
