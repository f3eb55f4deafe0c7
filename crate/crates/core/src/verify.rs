//! Invariant suites run over the catalog at the primes 2, 3, 5 and 7.

use std::cell::OnceCell;
use std::collections::HashSet;
use std::collections::VecDeque;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{catalog_get, CATALOG_NAMES};
use crate::checks::{
    is_p_perfect, prop4_check_with_sylow, tate_corollary_check_in, tate_criterion_check_with_sylow,
};
use crate::cohomology::{
    h1_dim, h1_fixed_dim, h1_hom_oracle, lemma1_dims_with_sylow, ORACLE_ORDER_CAP,
};
use crate::error::{GroupError, Result};
use crate::filtration::{
    canonical_series, count_non_p_solvable, exhaustive_lengths_in, p_perfect_filtration_from,
    theorem_a_filtration_with_sylow, FactorKind, PPerfectFiltration, RefinedSeries,
    TheoremAFiltration, EXHAUSTIVE_ORDER_CAP,
};
use crate::group::PermGroup;
use crate::lattice::{
    chief_series_with, normal_subgroups, NormalLattice, TieBreak, NORMAL_LATTICE_CAP,
};
use crate::prime::{p_part, Prime};
use crate::subgroup::{derived_subgroup, intersection};
use crate::sylow::{min_generators_p_group, sylow_subgroup};

/// Primes swept by default.
pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    TheoremA,
    TheoremB,
    Lemma1,
    Tate,
    TateCor,
    Prop4,
    Huppert,
    Oracle,
    Lengths,
    Kernel,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::TheoremA,
        Suite::TheoremB,
        Suite::Lemma1,
        Suite::Tate,
        Suite::TateCor,
        Suite::Prop4,
        Suite::Huppert,
        Suite::Oracle,
        Suite::Lengths,
        Suite::Kernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremA => "theorem-a",
            Suite::TheoremB => "theorem-b",
            Suite::Lemma1 => "lemma1",
            Suite::Tate => "tate",
            Suite::TateCor => "tate-cor",
            Suite::Prop4 => "prop4",
            Suite::Huppert => "huppert",
            Suite::Oracle => "oracle",
            Suite::Lengths => "lengths",
            Suite::Kernel => "kernel",
        }
    }

    /// Parses a suite name; `all` selects every suite.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|&s| vec![s])
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                GroupError::input(format!(
                    "unknown suite {name:?}; expected one of {}, all",
                    names.join(", ")
                ))
            })
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseOutcome {
    pub suite: Suite,
    pub group: String,
    pub prime: Prime,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub suite: Suite,
    pub group: String,
    pub prime: Prime,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub cases: Vec<CaseOutcome>,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verify report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!(
                "[{tag}] {:<9} {:<8} p={}  expected: {}; actual: {}\n",
                c.suite.name(),
                c.group,
                c.prime,
                c.expected,
                c.actual
            ));
        }
        let failed = self.violations.len();
        let skipped = self
            .cases
            .iter()
            .filter(|c| c.status == Status::Skip)
            .count();
        out.push_str(&format!(
            "{} cases, {} passed, {failed} failed, {skipped} skipped\n",
            self.cases.len(),
            self.cases.len() - failed - skipped
        ));
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub suites: Vec<Suite>,
    /// Restrict to one catalog group.
    pub group: Option<String>,
    /// Restrict to one prime; by default the primes in [`DEFAULT_PRIMES`]
    /// dividing the group order.
    pub prime: Option<Prime>,
}

/// Runs the selected suites over the selected (group, prime) cases.
/// Mathematical failures are reported as violations; errors propagate.
pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let names: Vec<&str> = match &opts.group {
        Some(name) => {
            catalog_get(name)?;
            vec![name.as_str()]
        }
        None => CATALOG_NAMES.to_vec(),
    };
    let mut cases = Vec::new();
    for name in names {
        let g = catalog_get(name)?;
        let primes: Vec<Prime> = match opts.prime {
            Some(p) => vec![p],
            None => DEFAULT_PRIMES
                .iter()
                .map(|&q| Prime::new(q).expect("small primes"))
                .filter(|q| q.divides(g.order()))
                .collect(),
        };
        for p in primes {
            cases.push((name.to_string(), g.clone(), p));
        }
    }
    let mut outcomes: Vec<CaseOutcome> = cases
        .par_iter()
        .map(|(name, g, p)| {
            let case = Case::new(g, *p);
            opts.suites
                .iter()
                .map(|&suite| {
                    let (status, expected, actual) = case.run(suite)?;
                    Ok(CaseOutcome {
                        suite,
                        group: name.clone(),
                        prime: *p,
                        status,
                        expected,
                        actual,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    outcomes.sort_by(|a, b| {
        (&a.group, a.prime.get(), a.suite).cmp(&(&b.group, b.prime.get(), b.suite))
    });
    let violations = outcomes
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| Violation {
            suite: c.suite,
            group: c.group.clone(),
            prime: c.prime,
            expected: c.expected.clone(),
            actual: c.actual.clone(),
        })
        .collect();
    Ok(VerifyReport {
        cases: outcomes,
        violations,
    })
}

type Verdict = (Status, String, String);

fn verdict(ok: bool, expected: impl Into<String>, actual: impl Into<String>) -> Verdict {
    let status = if ok { Status::Pass } else { Status::Fail };
    (status, expected.into(), actual.into())
}

fn skipped(reason: impl Into<String>) -> Verdict {
    (Status::Skip, "-".into(), reason.into())
}

/// Lazily computed data shared by the suites of one (group, prime) case.
struct Case<'a> {
    g: &'a PermGroup,
    p: Prime,
    sylow: OnceCell<PermGroup>,
    d: OnceCell<usize>,
    lattice: OnceCell<Option<NormalLattice>>,
    theorem_a: OnceCell<TheoremAFiltration>,
    series: OnceCell<RefinedSeries>,
    pperfect: OnceCell<PPerfectFiltration>,
    non_p_solvable: OnceCell<usize>,
}

fn cached<T>(cell: &OnceCell<T>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

impl<'a> Case<'a> {
    fn new(g: &'a PermGroup, p: Prime) -> Self {
        Case {
            g,
            p,
            sylow: OnceCell::new(),
            d: OnceCell::new(),
            lattice: OnceCell::new(),
            theorem_a: OnceCell::new(),
            series: OnceCell::new(),
            pperfect: OnceCell::new(),
            non_p_solvable: OnceCell::new(),
        }
    }

    fn sylow(&self) -> Result<&PermGroup> {
        cached(&self.sylow, || sylow_subgroup(self.g, self.p))
    }

    fn d(&self) -> Result<usize> {
        cached(&self.d, || {
            Ok(min_generators_p_group(self.sylow()?, self.p)? as usize)
        })
        .copied()
    }

    /// The normal-subgroup lattice, or `None` above its cap.
    fn lattice(&self) -> Result<Option<&NormalLattice>> {
        cached(&self.lattice, || {
            if self.g.order() > &BigUint::from(NORMAL_LATTICE_CAP) {
                Ok(None)
            } else {
                normal_subgroups(self.g).map(Some)
            }
        })
        .map(Option::as_ref)
    }

    fn theorem_a(&self) -> Result<&TheoremAFiltration> {
        cached(&self.theorem_a, || {
            theorem_a_filtration_with_sylow(self.g, self.sylow()?, self.p)
        })
    }

    fn series(&self) -> Result<&RefinedSeries> {
        cached(&self.series, || canonical_series(self.g, self.p))
    }

    fn pperfect(&self) -> Result<&PPerfectFiltration> {
        cached(&self.pperfect, || {
            p_perfect_filtration_from(self.g, self.series()?)
        })
    }

    /// Non-p-solvable chief factors, counted along a chief series.
    fn non_p_solvable(&self) -> Result<usize> {
        cached(&self.non_p_solvable, || {
            let lattice = self
                .lattice()?
                .ok_or_else(|| GroupError::capacity("chief series", NORMAL_LATTICE_CAP))?;
            Ok(count_non_p_solvable(
                &chief_series_with(lattice, TieBreak::First),
                self.p,
            ))
        })
        .copied()
    }

    fn run(&self, suite: Suite) -> Result<Verdict> {
        match suite {
            Suite::TheoremA => self.theorem_a_suite(),
            Suite::TheoremB => self.theorem_b_suite(),
            Suite::Lemma1 => self.lemma1_suite(),
            Suite::Tate => self.tate_suite(),
            Suite::TateCor => self.tate_cor_suite(),
            Suite::Prop4 => self.prop4_suite(),
            Suite::Huppert => self.huppert_suite(),
            Suite::Oracle => self.oracle_suite(),
            Suite::Lengths => self.lengths_suite(),
            Suite::Kernel => self.kernel_suite(),
        }
    }

    fn theorem_a_suite(&self) -> Result<Verdict> {
        let f = self.theorem_a()?;
        let direct = self.non_p_solvable()? == 0;
        let stable_trivial = f.stable().is_trivial();
        let stable_dim = h1_dim(f.stable(), self.p)?;
        let ok = f.verdict() == direct
            && f.verdict() == stable_trivial
            && (stable_trivial || stable_dim == 0);
        Ok(verdict(
            ok,
            format!("criterion = chief-factor verdict ({direct}) = [stable term trivial]"),
            format!(
                "lhs {} rhs {} criterion {} stable order {} (H^1 dim {stable_dim})",
                f.lhs_dim(),
                f.rhs_dim(),
                f.verdict(),
                f.stable().order()
            ),
        ))
    }

    fn theorem_b_suite(&self) -> Result<Verdict> {
        let d = self.d()?;
        let s = self.series()?;
        let (l, gen) = (s.p_length(), s.generalized_p_length());
        let nps = self.non_p_solvable()?;
        let pp = self.pperfect()?.pperfect_length();
        Ok(verdict(
            l <= d && nps <= d && pp <= d && gen <= 2 * d,
            format!("p_length, non_p_solvable_length, pperfect_length <= d = {d}; generalized <= {}", 2 * d),
            format!("p_length {l}, non_p_solvable_length {nps}, pperfect_length {pp}, generalized {gen}"),
        ))
    }

    fn lemma1_suite(&self) -> Result<Verdict> {
        let Some(lattice) = self.lattice()? else {
            return Ok(skipped("group exceeds the normal-subgroup lattice cap"));
        };
        let mut checked = 0;
        let mut failures = Vec::new();
        for n in lattice.iter() {
            if !is_p_perfect(n, self.p)? {
                continue;
            }
            let dims = lemma1_dims_with_sylow(self.g, n, self.sylow()?, self.p)?;
            checked += 1;
            if !dims.holds() {
                failures.push(format!(
                    "|N| = {}: {} != {} + {}",
                    n.order(),
                    dims.sylow,
                    dims.quotient,
                    dims.fixed
                ));
            }
        }
        Ok(verdict(
            failures.is_empty(),
            "dim H^1(P) = dim H^1(P/M) + dim H^1(M)^P for every p-perfect normal N",
            if failures.is_empty() {
                format!("{checked} p-perfect normal subgroups checked")
            } else {
                failures.join("; ")
            },
        ))
    }

    fn tate_suite(&self) -> Result<Verdict> {
        let ok = tate_criterion_check_with_sylow(self.g, self.sylow()?, self.p)?;
        Ok(verdict(
            ok,
            "dim H^1(G) = dim H^1(P) iff G is p-nilpotent",
            format!(
                "dim H^1(G) {}, dim H^1(P) {}",
                h1_dim(self.g, self.p)?,
                self.theorem_a()?.lhs_dim()
            ),
        ))
    }

    fn tate_cor_suite(&self) -> Result<Verdict> {
        let Some(lattice) = self.lattice()? else {
            return Ok(skipped("group exceeds the normal-subgroup lattice cap"));
        };
        let ok = tate_corollary_check_in(lattice, self.sylow()?, self.p)?;
        Ok(verdict(
            ok,
            "every normal N with N ∩ P <= Φ(P) is p-nilpotent",
            format!("{} normal subgroups, all conforming: {ok}", lattice.len()),
        ))
    }

    fn prop4_suite(&self) -> Result<Verdict> {
        let f = self.pperfect()?;
        let out = prop4_check_with_sylow(self.g, self.sylow()?, self.p, f.members())?;
        let monotone = out.coinvariant_dims.windows(2).all(|w| w[0] >= w[1]);
        let orders: Vec<String> = f.members().iter().map(|m| m.order().to_string()).collect();
        Ok(verdict(
            out.holds() && monotone,
            "injective coinvariant maps, isomorphisms exactly at p' gaps",
            format!(
                "members {} with coinvariant dims {:?}",
                orders.join(" > "),
                out.coinvariant_dims
            ),
        ))
    }

    fn huppert_suite(&self) -> Result<Verdict> {
        let d = self.d()?;
        let nps = self.non_p_solvable()?;
        let mut h = self.g.clone();
        while !h.is_trivial() {
            let next = derived_subgroup(&h);
            if next.same_as(&h) {
                break;
            }
            h = next;
        }
        let solvable = h.is_trivial();
        let l = self.series()?.p_length();
        let ok = nps <= d && (!solvable || (nps == 0 && l <= d));
        Ok(verdict(
            ok,
            format!(
                "non_p_solvable_length <= d = {d}{}",
                if solvable {
                    "; solvable, so p_length <= d and no non-p-solvable factors"
                } else {
                    ""
                }
            ),
            format!("non_p_solvable_length {nps}, p_length {l}, solvable {solvable}"),
        ))
    }

    fn oracle_suite(&self) -> Result<Verdict> {
        let sylow = self.sylow()?;
        let mut subjects: Vec<PermGroup> = self
            .theorem_a()?
            .terms()
            .iter()
            .map(|t| t.group.clone())
            .collect();
        for m in self.pperfect()?.members() {
            subjects.push(intersection(m, sylow)?);
        }
        if let Some(lattice) = self.lattice()? {
            for n in lattice.iter() {
                if is_p_perfect(n, self.p)? {
                    subjects.push(intersection(n, sylow)?);
                }
            }
        }
        let mut seen: Vec<PermGroup> = Vec::new();
        let mut mismatches = Vec::new();
        let (mut compared, mut over_cap) = (0, 0);
        for n in subjects {
            if seen.iter().any(|s| s.same_as(&n)) {
                continue;
            }
            seen.push(n.clone());
            if n.order() > &BigUint::from(ORACLE_ORDER_CAP) {
                over_cap += 1;
                continue;
            }
            let oracle = match h1_hom_oracle(&n, sylow, self.p) {
                Ok(v) => v,
                Err(GroupError::Capacity { .. }) => {
                    over_cap += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let fast = h1_fixed_dim(&n, sylow, self.p)?;
            compared += 1;
            if fast != oracle {
                mismatches.push(format!(
                    "|N| = {}: coinvariants {fast}, homomorphisms {oracle}",
                    n.order()
                ));
            }
        }
        Ok(verdict(
            mismatches.is_empty(),
            "dim H^1(N)^P by coinvariants = by homomorphism count",
            if mismatches.is_empty() {
                format!("{compared} triples agree, {over_cap} over the oracle cap")
            } else {
                mismatches.join("; ")
            },
        ))
    }

    fn lengths_suite(&self) -> Result<Verdict> {
        let Some(lattice) = self.lattice()? else {
            return Ok(skipped("group exceeds the normal-subgroup lattice cap"));
        };
        let s = self.series()?;
        let nps = self.non_p_solvable()?;
        let descents = s.count(FactorKind::NonPSolvableChief);
        let stable = [TieBreak::Last, TieBreak::Rotate(1), TieBreak::Rotate(2)]
            .iter()
            .all(|&t| count_non_p_solvable(&chief_series_with(lattice, t), self.p) == nps);
        let mut ok = nps == descents && stable;
        let mut actual = format!(
            "canonical generalized {}, p_length {}; chief non-p-solvable {nps}, series descents {descents}, tie-break stable {stable}",
            s.generalized_p_length(),
            s.p_length()
        );
        if self.g.order() <= &BigUint::from(EXHAUSTIVE_ORDER_CAP) {
            let e = exhaustive_lengths_in(lattice, self.p);
            ok &= e.generalized_p_length == s.generalized_p_length() && e.p_length == s.p_length();
            actual.push_str(&format!(
                "; exhaustive generalized {}, p_length {}",
                e.generalized_p_length, e.p_length
            ));
        }
        Ok(verdict(
            ok,
            "canonical lengths = exhaustive minima; chief counts independent of choices",
            actual,
        ))
    }

    fn kernel_suite(&self) -> Result<Verdict> {
        let Some(lattice) = self.lattice()? else {
            return Ok(skipped("group exceeds the normal-subgroup lattice cap"));
        };
        let order = self.g.order();
        let closure = closure_size(self.g);
        let mut problems = Vec::new();
        if BigUint::from(closure) != *order {
            problems.push(format!(
                "closure has {closure} elements, chain order {order}"
            ));
        }
        let sylow = self.sylow()?;
        if *sylow.order() != p_part(order, self.p) || !sylow.is_subgroup_of(self.g) {
            problems.push(format!("Sylow order {}", sylow.order()));
        }
        for n in lattice.iter() {
            if (order % n.order()) != BigUint::from(0u32) {
                problems.push(format!("|N| = {} does not divide |G|", n.order()));
                continue;
            }
            let q = self.g.quotient(n)?;
            if q.group().order() * n.order() != *order {
                problems.push(format!("|G/N| * |N| != |G| for |N| = {}", n.order()));
            }
        }
        Ok(verdict(
            problems.is_empty(),
            "chain order = closure size; Lagrange and quotient orders consistent",
            if problems.is_empty() {
                format!("order {order}, {} normal subgroups", lattice.len())
            } else {
                problems.join("; ")
            },
        ))
    }
}

/// Size of the closure of the generators under right multiplication.
fn closure_size(g: &PermGroup) -> usize {
    let id = g.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in g.generators() {
            let y = x.compose(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}
