//! Congruence catalog: parameterized progression congruences, their
//! instantiation, and a runner that expands each generating function once
//! per `(family, c, modulus)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::param::{Bindings, ParamExpr};
use crate::error::{Error, Result};
use crate::qfuncs::{genfun, FamilyKind, PartitionFamily};
use crate::series::{CoefficientRing, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    #[serde(rename = "a")]
    Cubic,
    #[serde(rename = "abar")]
    Overcubic,
}

impl FamilyTag {
    pub fn kind(self) -> FamilyKind {
        match self {
            FamilyTag::Cubic => FamilyKind::GeneralizedCubic,
            FamilyTag::Overcubic => FamilyKind::GeneralizedOvercubic,
        }
    }

    pub fn family(self, c: u64) -> PartitionFamily {
        PartitionFamily { kind: self.kind(), c }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Theorem,
    Conjecture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionExpr {
    #[serde(rename = "A_expr")]
    pub a_expr: String,
    #[serde(rename = "B_expr")]
    pub b_expr: String,
}

/// `family_c(A n + B) ≡ 0 (mod u)` over a finite box of parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// Human-readable grouping used in the traceability table.
    pub label: String,
    pub family: FamilyTag,
    pub c_expr: String,
    pub progression: ProgressionExpr,
    pub mod_expr: String,
    #[serde(default)]
    pub ranges: BTreeMap<String, [i64; 2]>,
    pub depth: usize,
    pub status: ClaimStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Instance {
    Valid {
        params: Bindings,
        c: u64,
        a: u64,
        b: u64,
        modulus: u64,
    },
    /// The subscript came out below 1.
    OutOfDomain {
        params: Bindings,
        c: i64,
    },
}

impl Claim {
    fn exprs(&self) -> Result<[ParamExpr; 4]> {
        let parse = |s: &str| s.parse::<ParamExpr>().map_err(|e| Error::Expr(format!("claim {}: {e}", self.id)));
        Ok([
            parse(&self.c_expr)?,
            parse(&self.progression.a_expr)?,
            parse(&self.progression.b_expr)?,
            parse(&self.mod_expr)?,
        ])
    }

    /// Every assignment of the parameter box, in lexicographic order of the
    /// parameter names.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        let [ce, ae, be, me] = self.exprs()?;
        for e in [&ce, &ae, &be, &me] {
            if let Some(v) = e.variables().into_iter().find(|v| !self.ranges.contains_key(v)) {
                return Err(Error::Expr(format!("claim {}: parameter {v} has no range", self.id)));
            }
        }
        let names: Vec<&String> = self.ranges.keys().collect();
        let mut out = Vec::new();
        let mut env = Bindings::new();
        self.walk(&names, &mut env, &mut |env| {
            let c = ce.eval(env)?;
            if c < 1 {
                out.push(Instance::OutOfDomain { params: env.clone(), c });
                return Ok(());
            }
            let (a, b, u) = (ae.eval(env)?, be.eval(env)?, me.eval(env)?);
            if a < 1 || b < 0 || b >= a || u < 2 {
                return Err(Error::Invalid(format!("claim {}: bad progression {a}n+{b} mod {u} at {env:?}", self.id)));
            }
            out.push(Instance::Valid { params: env.clone(), c: c as u64, a: a as u64, b: b as u64, modulus: u as u64 });
            Ok(())
        })?;
        Ok(out)
    }

    fn walk(&self, names: &[&String], env: &mut Bindings, f: &mut dyn FnMut(&Bindings) -> Result<()>) -> Result<()> {
        let Some((first, rest)) = names.split_first() else {
            return f(env);
        };
        let [lo, hi] = self.ranges[*first];
        for v in lo..=hi {
            env.insert((*first).clone(), v);
            self.walk(rest, env, f)?;
        }
        env.remove(*first);
        Ok(())
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<Claim>> {
    let claims: Vec<Claim> = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
    let mut seen = std::collections::HashSet::new();
    for c in &claims {
        if !seen.insert(&c.id) {
            return Err(Error::Fixture(format!("duplicate claim id {}", c.id)));
        }
        if c.depth < 1 {
            return Err(Error::Fixture(format!("claim {} has depth 0", c.id)));
        }
    }
    Ok(claims)
}

/// The bundled catalog.
pub fn builtin_claims() -> Vec<Claim> {
    parse_catalog(include_str!("../../fixtures/claims.json")).expect("bundled catalog parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { n: usize, index: usize, residue: u64 },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub params: Bindings,
    pub c: i64,
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    pub depth: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub label: String,
    pub status: ClaimStatus,
    pub instantiations: Vec<InstanceResult>,
    pub wall_ms: u64,
}

impl ClaimResult {
    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instantiations.iter().filter(|r| matches!(r.verdict, Verdict::Fail { .. }))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn checked(&self) -> usize {
        self.instantiations.iter().filter(|r| r.verdict == Verdict::Pass).count()
    }

    pub fn skipped(&self) -> usize {
        self.instantiations.iter().filter(|r| matches!(r.verdict, Verdict::Skipped { .. })).count()
    }

    /// One-line summary; conjectures read "consistent" or "COUNTEREXAMPLE".
    pub fn summary(&self) -> String {
        let depth = self.instantiations.iter().map(|r| r.depth).max().unwrap_or(0);
        let body = match (self.status, self.failures().next()) {
            (ClaimStatus::Theorem, None) => format!("pass ({} instances, n ≤ {depth})", self.checked()),
            (ClaimStatus::Conjecture, None) => format!("consistent to depth {depth} ({} instances)", self.checked()),
            (status, Some(f)) => {
                let word = if status == ClaimStatus::Theorem { "FAIL" } else { "COUNTEREXAMPLE" };
                let Verdict::Fail { n, index, residue } = &f.verdict else { unreachable!() };
                format!("{word} at c = {}, n = {n}: coefficient {index} ≡ {residue} (mod {})", f.c, f.modulus)
            }
        };
        let skipped = match self.skipped() {
            0 => String::new(),
            s => format!(", {s} out-of-domain skipped"),
        };
        format!("{}: {body}{skipped} [{} ms]", self.id, self.wall_ms)
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub include_conjectures: bool,
    /// Overrides every entry's depth.
    pub depth: Option<usize>,
    /// Restrict to these ids.
    pub ids: Option<Vec<String>>,
}

type SeriesKey = (FamilyKind, u64, u64);

/// Lazily expanded generating functions shared by the entries of one run.
struct SeriesCache {
    orders: HashMap<SeriesKey, usize>,
    cells: Mutex<HashMap<SeriesKey, Arc<OnceLock<Arc<TruncatedSeries>>>>>,
}

impl SeriesCache {
    fn get(&self, key: SeriesKey) -> Result<Arc<TruncatedSeries>> {
        let cell = self.cells.lock().expect("cache lock").entry(key).or_default().clone();
        if let Some(s) = cell.get() {
            return Ok(s.clone());
        }
        let ring = CoefficientRing::modulo(key.2)?;
        let f = PartitionFamily { kind: key.0, c: key.1 };
        Ok(cell.get_or_init(|| Arc::new(genfun(f, ring, self.orders[&key]))).clone())
    }
}

pub fn select<'a>(claims: &'a [Claim], opts: &RunOptions) -> Result<Vec<&'a Claim>> {
    if let Some(ids) = &opts.ids {
        if let Some(missing) = ids.iter().find(|id| !claims.iter().any(|c| &c.id == *id)) {
            return Err(Error::Invalid(format!("no catalog entry with id {missing}")));
        }
    }
    Ok(claims
        .iter()
        .filter(|c| opts.include_conjectures || c.status == ClaimStatus::Theorem || opts.ids.is_some())
        .filter(|c| opts.ids.as_ref().is_none_or(|ids| ids.contains(&c.id)))
        .collect())
}

/// Runs the selected entries on the current rayon pool.
pub fn run_claims(claims: &[Claim], opts: &RunOptions) -> Result<Vec<ClaimResult>> {
    let chosen = select(claims, opts)?;
    let mut plans = Vec::with_capacity(chosen.len());
    let mut orders: HashMap<SeriesKey, usize> = HashMap::new();
    for claim in &chosen {
        let depth = opts.depth.unwrap_or(claim.depth);
        let inst = claim.instances()?;
        for i in &inst {
            if let Instance::Valid { c, a, b, modulus, .. } = i {
                let need = (*a as usize) * depth + *b as usize + 1;
                let e = orders.entry((claim.family.kind(), *c, *modulus)).or_insert(0);
                *e = (*e).max(need);
            }
        }
        plans.push((*claim, depth, inst));
    }
    let cache = SeriesCache { orders, cells: Mutex::new(HashMap::new()) };
    plans.par_iter().map(|(claim, depth, inst)| run_one(claim, *depth, inst, &cache)).collect()
}

fn run_one(claim: &Claim, depth: usize, inst: &[Instance], cache: &SeriesCache) -> Result<ClaimResult> {
    let start = Instant::now();
    let mut results = Vec::with_capacity(inst.len());
    for i in inst {
        results.push(match i {
            Instance::OutOfDomain { params, c } => InstanceResult {
                params: params.clone(),
                c: *c,
                a: 0,
                b: 0,
                modulus: 0,
                depth,
                verdict: Verdict::Skipped { reason: format!("out of domain: c = {c} < 1") },
            },
            Instance::Valid { params, c, a, b, modulus } => {
                let series = cache.get((claim.family.kind(), *c, *modulus))?;
                let (a_us, b_us) = (*a as usize, *b as usize);
                let fail = (0..=depth).find(|n| !series.coeff_is_zero(a_us * n + b_us));
                let verdict = match fail {
                    None => Verdict::Pass,
                    Some(n) => {
                        let index = a_us * n + b_us;
                        let residue = series.coeff(index).try_into().expect("residue below modulus");
                        Verdict::Fail { n, index, residue }
                    }
                };
                InstanceResult { params: params.clone(), c: *c as i64, a: *a, b: *b, modulus: *modulus, depth, verdict }
            }
        });
    }
    Ok(ClaimResult {
        id: claim.id.clone(),
        label: claim.label.clone(),
        status: claim.status,
        instantiations: results,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::direct_congruence;

    fn by_id(id: &str) -> Claim {
        builtin_claims().into_iter().find(|c| c.id == id).unwrap()
    }

    #[test]
    fn catalog_parses_with_unique_ids() {
        let claims = builtin_claims();
        assert_eq!(claims.len(), 43);
        assert_eq!(claims.iter().filter(|c| c.status == ClaimStatus::Theorem).count(), 22);
        for c in &claims {
            c.instances().unwrap();
        }
    }

    #[test]
    fn out_of_domain_instances_are_recorded() {
        let claim = by_id("abar(2^k*i+2^(k-1)-3)-8n+7");
        let inst = claim.instances().unwrap();
        assert_eq!(inst.len(), 36);
        let skipped: Vec<i64> = inst
            .iter()
            .filter_map(|i| match i {
                Instance::OutOfDomain { c, .. } => Some(*c),
                _ => None,
            })
            .collect();
        // (i, k) = (0, 1), (0, 2), (1, 1)
        assert_eq!(skipped, vec![-2, -1, 0]);
    }

    #[test]
    fn instantiation_of_the_2k_family() {
        let inst = by_id("abar(2^k*i-2^(k-1)-2)-8n+5").instances().unwrap();
        let Instance::Valid { c, modulus, .. } = &inst[0] else { panic!() };
        assert_eq!((*c, *modulus), (2, 16));
        assert_eq!(inst.len(), 20);
    }

    #[test]
    fn runner_agrees_with_direct_check() {
        let claims = builtin_claims();
        let opts = RunOptions {
            depth: Some(60),
            ids: Some(vec!["abar2i-4n+3-mod4".into(), "a37-43n+12".into()]),
            ..Default::default()
        };
        let res = run_claims(&claims, &opts).unwrap();
        assert_eq!(res.len(), 2);
        assert!(res.iter().all(|r| r.passed()));
        assert!(direct_congruence(PartitionFamily::cubic(37), 43, 12, 43, 60).unwrap().passed());
    }

    #[test]
    fn runner_reports_a_witness() {
        let mut bad = by_id("a37-43n+12");
        bad.progression.b_expr = "13".into();
        bad.id = "wrong".into();
        let res = run_claims(&[bad], &RunOptions { depth: Some(20), ..Default::default() }).unwrap();
        let Verdict::Fail { n, index, .. } = res[0].instantiations[0].verdict else { panic!() };
        let direct = direct_congruence(PartitionFamily::cubic(37), 43, 13, 43, 20).unwrap();
        assert_eq!(Some(n), direct.first_failure.map(|f| f.0));
        assert_eq!(index, 43 * n + 13);
        assert!(res[0].summary().contains("FAIL"));
    }

    #[test]
    fn conjectures_need_opt_in() {
        let claims = builtin_claims();
        assert_eq!(select(&claims, &RunOptions::default()).unwrap().len(), 22);
        let all = RunOptions { include_conjectures: true, ..Default::default() };
        assert_eq!(select(&claims, &all).unwrap().len(), 43);
        assert!(select(&claims, &RunOptions { ids: Some(vec!["nope".into()]), ..Default::default() }).is_err());
    }
}
