use serde_json::{json, Value};

use super::{set_json, ClassOutcome, Sampler, Suite, SuiteKind, SuiteOptions};
use crate::bingh::bing_hanner;
use crate::dimension::{
    cov_dim, find_partition, find_point_partition, ind_at, ind_boundary, ind_partition, large_ind, DimValue,
};
use crate::error::Result;
use crate::hitting::{minimum_hitting_set, HittingOutcome};
use crate::lattice::{enumerate_extensions, is_extension, meet};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;
use crate::structural::{sn, sn_bh, ClassPredicate, NAMED_CLASSES};

type CheckFn = fn(&FiniteSpace, &mut Sampler, &SuiteOptions) -> Result<ClassOutcome>;

/// A suite given by a plain check function.
pub struct FnSuite {
    name: &'static str,
    kind: SuiteKind,
    check: CheckFn,
}

impl FnSuite {
    pub const fn new(name: &'static str, kind: SuiteKind, check: CheckFn) -> Self {
        FnSuite { name, kind, check }
    }
}

impl Suite for FnSuite {
    fn name(&self) -> &'static str {
        self.name
    }

    fn kind(&self) -> SuiteKind {
        self.kind
    }

    fn check_class(&self, space: &FiniteSpace, sampler: &mut Sampler, options: &SuiteOptions) -> Result<ClassOutcome> {
        (self.check)(space, sampler, options)
    }
}

pub(super) fn standard_suites() -> Vec<Box<dyn Suite>> {
    use SuiteKind::*;
    let list: [(&'static str, SuiteKind, CheckFn); 17] = [
        ("prop-intersection-1", Hard, prop_intersection_1),
        ("prop-intersection-2", Hard, prop_intersection_2),
        ("bh-basics", Hard, bh_basics),
        ("bh-preserve-t", Hard, bh_preserve_t),
        ("bh-preserve-hn", Hard, bh_preserve_hn),
        ("partition-avoid-Ind0", Hard, partition_avoid_large),
        ("partition-avoid-ind0", Hard, partition_avoid_small),
        ("bh-Ind0", Hard, bh_large_ind0),
        ("bh-ind0", Hard, bh_small_ind0),
        ("sn-monotone", Hard, sn_monotone),
        ("density-monotone", Hard, density_monotone),
        ("sn-hn-upper", Hard, sn_hn_upper),
        ("ind-le-Ind", Exploratory, ind_le_large),
        ("dim-le-Ind", Exploratory, dim_le_large),
        ("Ind0-iff-dim0", Exploratory, large0_iff_dim0),
        ("lower-bound-add", Exploratory, lower_bound_add),
        ("ind-two-forms", Exploratory, ind_two_forms),
    ];
    list.into_iter()
        .map(|(name, kind, check)| Box::new(FnSuite::new(name, kind, check)) as Box<dyn Suite>)
        .collect()
}


type Test = fn(&FiniteSpace) -> bool;
type Measure = fn(&FiniteSpace) -> DimValue;
fn table_json(space: &FiniteSpace) -> Value {
    Value::from(space.min_nbhds().iter().map(|s| s.to_vec()).collect::<Vec<_>>())
}

fn family_json(family: &[PointSet]) -> Value {
    Value::from(family.iter().map(|s| s.to_vec()).collect::<Vec<_>>())
}

/// Nonempty families of distinct subsets with at most `max` members.
fn families(n: usize, max: usize) -> Vec<Vec<PointSet>> {
    let all: Vec<PointSet> = PointSet::all_subsets(n).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn grow(all: &[PointSet], start: usize, max: usize, current: &mut Vec<PointSet>, out: &mut Vec<Vec<PointSet>>) {
        for i in start..all.len() {
            current.push(all[i]);
            out.push(current.clone());
            if current.len() < max {
                grow(all, i + 1, max, current, out);
            }
            current.pop();
        }
    }
    grow(&all, 0, max, &mut current, &mut out);
    out
}

fn disjoint_closed_pairs(space: &FiniteSpace) -> Vec<(PointSet, PointSet)> {
    let closed = space.closed_sets();
    let mut pairs = Vec::new();
    for &a in &closed {
        for &b in &closed {
            if a.bits() <= b.bits() && a.is_disjoint(b) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn nonempty_subsets(n: usize) -> Vec<PointSet> {
    PointSet::all_subsets(n).filter(|s| !s.is_empty()).collect()
}

fn union_of(n: usize, family: &[PointSet]) -> PointSet {
    family.iter().fold(PointSet::empty(n), |a, &b| a | b)
}

fn bh_meet(space: &FiniteSpace, family: &[PointSet]) -> Result<FiniteSpace> {
    let mods: Vec<FiniteSpace> = family.iter().map(|&m| bing_hanner(space, m)).collect();
    meet(&mods)
}

/// Families of subsets tried by the intersection suites: everything up to
/// `max_family` members, plus the cover by singletons.
fn intersection_inputs(space: &FiniteSpace, sampler: &mut Sampler, options: &SuiteOptions) -> Vec<Vec<PointSet>> {
    let n = space.n();
    let mut fams = sampler.pick(families(n, options.max_family));
    let singletons: Vec<PointSet> = (0..n).map(|x| PointSet::singleton(n, x)).collect();
    if !fams.contains(&singletons) {
        fams.push(singletons);
    }
    fams
}

fn prop_intersection_1(space: &FiniteSpace, sampler: &mut Sampler, options: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    for fam in intersection_inputs(space, sampler, options) {
        if !out.instance(union_of(space.n(), &fam).is_full()) {
            continue;
        }
        let m = bh_meet(space, &fam)?;
        if m != *space {
            out.find(
                json!({ "family": family_json(&fam) }),
                "meet of the modifications equals the topology",
                format!("meet has minimal neighborhoods {}", table_json(&m)),
            );
        }
    }
    Ok(out)
}

fn prop_intersection_2(space: &FiniteSpace, sampler: &mut Sampler, options: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let no_isolated = space.isolated_points().is_empty();
    for fam in intersection_inputs(space, sampler, options) {
        let hyp = no_isolated && bh_meet(space, &fam)? == *space;
        if !out.instance(hyp) {
            continue;
        }
        let u = union_of(space.n(), &fam);
        if !u.is_full() {
            out.find(
                json!({ "family": family_json(&fam) }),
                "family covers the space",
                format!("union is {u}"),
            );
        }
    }
    Ok(out)
}

fn bh_basics(space: &FiniteSpace, sampler: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let n = space.n();
    for m in sampler.pick(PointSet::all_subsets(n).collect()) {
        out.instance(true);
        let t = bing_hanner(space, m);
        let mut failed = Vec::new();
        if !is_extension(space, &t)? {
            failed.push("extension");
        }
        if !t.is_closed(m) {
            failed.push("M closed");
        }
        if t.restrict(m).0 != space.restrict(m).0 {
            failed.push("subspace agreement");
        }
        if !m.complement().iter().all(|x| t.is_open(PointSet::singleton(n, x))) {
            failed.push("outside points open");
        }
        if !failed.is_empty() {
            out.find(json!({ "M": set_json(m) }), "all four properties", failed.join(", "));
        }
    }
    Ok(out)
}

fn bh_preserve_t(space: &FiniteSpace, sampler: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let axioms: [(&str, Test); 3] = [
        ("t0", FiniteSpace::is_t0),
        ("t1", FiniteSpace::is_t1),
        ("t2", FiniteSpace::is_t2),
    ];
    for m in sampler.pick(PointSet::all_subsets(space.n()).collect()) {
        let t = bing_hanner(space, m);
        for (name, axiom) in axioms {
            if out.instance(axiom(space)) && !axiom(&t) {
                out.find(json!({ "M": set_json(m), "axiom": name }), format!("{name} preserved"), "lost");
            }
        }
    }
    Ok(out)
}

fn bh_preserve_hn(space: &FiniteSpace, sampler: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let props: [(&str, Test); 2] = [
        ("hereditarily_normal", FiniteSpace::is_hereditarily_normal),
        (
            "hereditarily_collectionwise_normal",
            FiniteSpace::is_hereditarily_collectionwise_normal,
        ),
    ];
    let holds: Vec<bool> = props.iter().map(|(_, p)| p(space)).collect();
    for m in sampler.pick(PointSet::all_subsets(space.n()).collect()) {
        let t = bing_hanner(space, m);
        for ((name, p), &h) in props.iter().zip(&holds) {
            if out.instance(h) && !p(&t) {
                out.find(json!({ "M": set_json(m), "property": name }), format!("{name} preserved"), "lost");
            }
        }
    }
    Ok(out)
}

fn zero_subsets(space: &FiniteSpace, sampler: &mut Sampler, dim: fn(&FiniteSpace) -> DimValue) -> Vec<PointSet> {
    sampler
        .pick(nonempty_subsets(space.n()))
        .into_iter()
        .filter(|&m| dim(&space.restrict(m).0).is_zero())
        .collect()
}

fn partition_avoid_large(space: &FiniteSpace, sampler: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let hn = space.is_hereditarily_normal();
    let pairs = sampler.pick(disjoint_closed_pairs(space));
    for m in zero_subsets(space, sampler, large_ind) {
        for &(a, b) in &pairs {
            if out.instance(hn) && find_partition(space, a, b, m)?.is_none() {
                out.find(
                    json!({ "M": set_json(m), "A": set_json(a), "B": set_json(b) }),
                    "a partition between A and B missing M",
                    "none exists",
                );
            }
        }
    }
    Ok(out)
}

/// Is there an open `O ⊇ a` whose closure misses `x`? The smallest candidate
/// is the open hull of `a`.
fn shrinkable(space: &FiniteSpace, x: usize, a: PointSet) -> bool {
    !space.closure(space.open_hull(a)).contains(x)
}

fn partition_avoid_small(space: &FiniteSpace, sampler: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let hn = space.is_hereditarily_normal();
    let closed = space.closed_sets();
    for m in zero_subsets(space, sampler, ind_boundary) {
        let mut inputs = Vec::new();
        for x in m.iter() {
            for &a in &closed {
                if !a.contains(x) {
                    inputs.push((x, a));
                }
            }
        }
        for (x, a) in sampler.pick(inputs) {
            let hyp = hn && shrinkable(space, x, a);
            if out.instance(hyp) && find_point_partition(space, x, a, m)?.is_none() {
                out.find(
                    json!({ "M": set_json(m), "x": x, "A": set_json(a) }),
                    "a partition between x and A missing M",
                    "none exists",
                );
            }
        }
    }
    Ok(out)
}

fn bh_large_ind0(space: &FiniteSpace, sampler: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let hn = space.is_hereditarily_normal();
    let hcn = space.is_hereditarily_collectionwise_normal();
    for m in zero_subsets(space, sampler, large_ind) {
        let t = bing_hanner(space, m);
        if out.instance(hn) {
            let ind = large_ind(&t);
            if !ind.is_zero() {
                out.find(json!({ "M": set_json(m) }), "Ind of the modification is 0", format!("Ind = {ind}"));
            }
            if !t.is_hereditarily_normal() {
                out.find(json!({ "M": set_json(m) }), "modification hereditarily normal", "not hereditarily normal");
            }
        }
        if out.instance(hcn) && !t.is_hereditarily_collectionwise_normal() {
            out.find(
                json!({ "M": set_json(m) }),
                "modification hereditarily collectionwise normal",
                "not hereditarily collectionwise normal",
            );
        }
    }
    Ok(out)
}

/// Checks the pointwise core of the statement: `ind_x = 0` at every `x ∈ M`.
/// The whole-space conclusion also needs the points outside `M` to be
/// closed, which is only checked when they are.
fn bh_small_ind0(space: &FiniteSpace, sampler: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let hn = space.is_hereditarily_normal();
    for m in zero_subsets(space, sampler, ind_boundary) {
        let t = bing_hanner(space, m);
        if !out.instance(hn) {
            continue;
        }
        for x in m.iter() {
            let v = ind_at(&t, x);
            if !v.is_zero() {
                out.find(json!({ "M": set_json(m), "x": x }), "ind at x is 0", format!("ind_x = {v}"));
            }
        }
        if !t.is_hereditarily_normal() {
            out.find(json!({ "M": set_json(m) }), "modification hereditarily normal", "not hereditarily normal");
        }
        let outside_closed = m
            .complement()
            .iter()
            .all(|y| t.is_closed(PointSet::singleton(space.n(), y)));
        if out.instance(outside_closed) {
            let v = ind_boundary(&t);
            if !v.is_zero() {
                out.find(json!({ "M": set_json(m) }), "ind of the modification is 0", format!("ind = {v}"));
            }
        }
    }
    Ok(out)
}

fn named(name: &str) -> ClassPredicate {
    ClassPredicate::named(name).expect("predefined class")
}

fn sn_monotone(space: &FiniteSpace, _: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let preds: Vec<ClassPredicate> = NAMED_CLASSES.iter().map(|(n, _)| named(n)).collect();
    let values = preds
        .iter()
        .map(|p| sn(space, p, None))
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in preds.iter().enumerate() {
        for (j, b) in preds.iter().enumerate() {
            if i == j || !out.instance(a.is_subclass_of(b)) {
                continue;
            }
            if !values[j].le(&values[i]) {
                out.find(
                    json!({ "smaller_class": a.name(), "larger_class": b.name() }),
                    format!("Sn[{}] <= Sn[{}]", b.name(), a.name()),
                    format!("{} > {}", values[j].summary(), values[i].summary()),
                );
            }
        }
    }
    Ok(out)
}

fn density_monotone(space: &FiniteSpace, sampler: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let d = space.density();
    for mu in sampler.pick(enumerate_extensions(space)?.collect()) {
        out.instance(true);
        let dm = mu.density();
        if d > dm {
            out.find(
                json!({ "extension": table_json(&mu) }),
                format!("density at least {d}"),
                format!("density {dm}"),
            );
        }
    }
    Ok(out)
}

/// Least cover of the space by the given pieces, if any.
fn least_cover(n: usize, pieces: &[PointSet]) -> Option<Vec<PointSet>> {
    let constraints: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..pieces.len()).filter(|&i| pieces[i].contains(x)).collect())
        .collect();
    match minimum_hitting_set(pieces.len(), &constraints, n) {
        HittingOutcome::Optimal(c) => Some(c.into_iter().map(|i| pieces[i]).collect()),
        _ => None,
    }
}

fn sn_hn_upper(space: &FiniteSpace, _: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let n = space.n();
    let cases: [(&str, Test, Measure); 6] = [
        ("hn-ind0", FiniteSpace::is_hereditarily_normal, ind_boundary),
        ("hn-dim0", FiniteSpace::is_hereditarily_normal, cov_dim),
        ("hn-Ind0", FiniteSpace::is_hereditarily_normal, large_ind),
        ("hcn-ind0", FiniteSpace::is_hereditarily_collectionwise_normal, ind_boundary),
        ("hcn-dim0", FiniteSpace::is_hereditarily_collectionwise_normal, cov_dim),
        ("hcn-Ind0", FiniteSpace::is_hereditarily_collectionwise_normal, large_ind),
    ];
    for (class, base, dim) in cases {
        let pred = named(class);
        // zero-dimensional pieces whose modification lands in the class
        let pieces: Vec<PointSet> = nonempty_subsets(n)
            .into_iter()
            .filter(|&m| dim(&space.restrict(m).0).is_zero() && pred.evaluate(&bing_hanner(space, m)))
            .collect();
        let cover = least_cover(n, &pieces);
        if !out.instance(base(space) && cover.is_some()) {
            continue;
        }
        let cover = cover.unwrap();
        let inputs = json!({ "class": class, "cover": family_json(&cover) });
        if bh_meet(space, &cover)? != *space {
            out.find(inputs.clone(), "cover meets to the topology", "meet differs");
        }
        let v = sn_bh(space, &pred, None)?;
        match v.value.finite() {
            Some(k) if (1..=cover.len()).contains(&k) => {}
            _ => out.find(
                inputs,
                format!("1 <= Sn <= {}", cover.len()),
                format!("Sn = {}", v.value.summary()),
            ),
        }
    }
    Ok(out)
}

fn profile_json(space: &FiniteSpace) -> Value {
    json!({
        "t1": space.is_t1(),
        "normal": space.is_normal(),
        "minimal_neighborhoods": table_json(space),
    })
}

fn ind_le_large(space: &FiniteSpace, _: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    out.instance(true);
    let (i, l) = (ind_boundary(space), large_ind(space));
    if i > l {
        out.find(profile_json(space), "ind <= Ind", format!("ind = {i}, Ind = {l}"));
    }
    Ok(out)
}

fn dim_le_large(space: &FiniteSpace, _: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    out.instance(true);
    let (d, l) = (cov_dim(space), large_ind(space));
    if d > l {
        out.find(profile_json(space), "dim <= Ind", format!("dim = {d}, Ind = {l}"));
    }
    Ok(out)
}

fn large0_iff_dim0(space: &FiniteSpace, _: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    out.instance(true);
    let (d, l) = (cov_dim(space), large_ind(space));
    if d.is_zero() != l.is_zero() {
        out.find(profile_json(space), "Ind = 0 iff dim = 0", format!("dim = {d}, Ind = {l}"));
    }
    Ok(out)
}

fn lower_bound_add(space: &FiniteSpace, _: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    let d = cov_dim(space);
    let hyp = space.is_hereditarily_normal()
        && space.isolated_points().is_empty()
        && matches!(d, DimValue::Finite(k) if k >= 1);
    if !out.instance(hyp) {
        return Ok(out);
    }
    let pieces: Vec<PointSet> = nonempty_subsets(space.n())
        .into_iter()
        .filter(|&m| cov_dim(&space.restrict(m).0).is_zero())
        .collect();
    let cover = least_cover(space.n(), &pieces).expect("singletons have dim 0");
    let DimValue::Finite(k) = d else { unreachable!() };
    if cover.len() <= k as usize && bh_meet(space, &cover)? == *space {
        let mut inputs = profile_json(space);
        inputs["family"] = family_json(&cover);
        out.find(
            inputs,
            format!("no family of at most {k} dim-0 subsets meets to the topology"),
            format!("{} subsets do", cover.len()),
        );
    }
    Ok(out)
}

fn ind_two_forms(space: &FiniteSpace, _: &mut Sampler, _: &SuiteOptions) -> Result<ClassOutcome> {
    let mut out = ClassOutcome::default();
    out.instance(true);
    let (b, p) = (ind_boundary(space), ind_partition(space));
    if b != p {
        out.find(profile_json(space), "boundary and partition forms agree", format!("ind_b = {b}, ind_p = {p}"));
    }
    Ok(out)
}
