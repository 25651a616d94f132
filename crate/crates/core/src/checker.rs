//! Verification of the identities and conjectures over parameter grids and
//! exhaustive arbor sweeps. Everything here returns plain data; callers
//! decide how to print it.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arbor::{enumerate_arbors, Arbor};
use crate::closedform::ehrhart_qnk;
use crate::combin::factorial;
use crate::error::{Error, Result};
use crate::lattice::{self, HPolytope};
use crate::parking::{descent_enumerator_tau, descent_enumerator_w};
use crate::poly::{IntPolynomial, RatPolynomial};
use crate::polyalg::{
    hstar_checked, hstar_from_ehrhart, is_palindromic, locate_roots, m_sequence_check, to_gamma_basis, Bound,
};

/// Outcome of one check. `lhs` and `rhs` hold the two compared objects,
/// `verdicts` any named sub-results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Value>,
}

fn int_json(p: &IntPolynomial) -> Value {
    serde_json::to_value(p).expect("integer arrays serialize")
}

fn arbor_params(a: &Arbor) -> Value {
    serde_json::from_str(&a.to_json()).expect("arbor JSON is well formed")
}

fn failed(check: &str, params: Value, detail: String) -> Report {
    Report { check: check.into(), params, pass: false, lhs: Value::Null, rhs: Value::Null, detail, verdicts: None }
}

/// Descent enumerator of `W_{n,n,k}` against the h* of `Q_{n,k}` obtained
/// from the closed-form Ehrhart polynomial and from lattice point counts.
pub fn check_theorem_hstar(n: usize, k: usize) -> Result<Report> {
    let params = json!({"n": n, "k": k});
    let lhs = descent_enumerator_w(n, n, k)?;
    let closed = hstar_from_ehrhart(&ehrhart_qnk(n, k)?, Some(n))?;
    let p = lattice::polytope_qndk(n, n, k)?;
    let interp = match lattice::hstar(&p) {
        Ok(h) => h,
        Err(e) => return Ok(failed("theorem_hstar", params, format!("interpolated h* unavailable: {e}"))),
    };
    let pass = lhs == closed && closed == interp;
    let detail = format!("descents {lhs}; closed form {closed}; interpolated {interp}");
    Ok(Report {
        check: "theorem_hstar".into(),
        params,
        pass,
        lhs: int_json(&lhs),
        rhs: int_json(&closed),
        detail,
        verdicts: Some(json!({
            "closed_equals_interpolated": closed == interp,
            "interpolated": int_json(&interp),
        })),
    })
}

/// Per-arbor data shared by the conjecture checks.
struct Prepared<'a> {
    arbor: &'a Arbor,
    polytope: HPolytope,
    ehrhart: std::result::Result<RatPolynomial, String>,
}

impl<'a> Prepared<'a> {
    fn new(a: &'a Arbor) -> Result<Self> {
        if let Err(msg) = a.validate() {
            return Err(Error::InvalidArbor(msg));
        }
        let polytope = lattice::polytope_of_arbor(a)?;
        let ehrhart = lattice::ehrhart_interpolated(&polytope).map_err(|e| e.to_string());
        Ok(Prepared { arbor: a, polytope, ehrhart })
    }

    fn hstar(&self) -> Report {
        let params = arbor_params(self.arbor);
        let ehr = match &self.ehrhart {
            Ok(e) => e,
            Err(e) => return failed("conjecture_hstar", params, format!("Ehrhart polynomial unavailable: {e}")),
        };
        let lhs = match hstar_checked(ehr, Some(self.arbor.n())) {
            Ok(h) => h,
            Err(e) => return failed("conjecture_hstar", params, format!("h* unavailable: {e}")),
        };
        let rhs = descent_enumerator_tau(self.arbor).expect("validated arbor");
        Report {
            check: "conjecture_hstar".into(),
            params,
            pass: lhs == rhs,
            detail: format!("h* {lhs}; descents {rhs}"),
            lhs: int_json(&lhs),
            rhs: int_json(&rhs),
            verdicts: None,
        }
    }

    fn hvector(&self) -> Report {
        let n = self.arbor.n();
        let h = lattice::h_vector(&self.polytope);
        let hp = h.to_polynomial();
        let palindromic = is_palindromic(&hp, n);
        let gamma = to_gamma_basis(&hp, n).ok();
        let gamma_nonnegative = gamma.as_ref().map(|g| g.is_nonnegative());
        let g = h.g_vector();
        let m_sequence = m_sequence_check(&g);
        let gamma_verdict = match gamma_nonnegative {
            Some(b) => json!(b),
            None => json!("undefined"),
        };
        let pass = palindromic && gamma_nonnegative == Some(true) && m_sequence;
        let show = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let detail = format!(
            "h=({}) palindromic={palindromic} gamma={} g=({}) m_sequence={m_sequence}",
            show(&h.hs),
            gamma.as_ref().map_or("undefined".to_string(), |g| format!("({})", show(&g.gammas))),
            show(&g),
        );
        Report {
            check: "conjecture_hvector".into(),
            params: arbor_params(self.arbor),
            pass,
            lhs: json!(crate::poly::json::ints(&h.hs)),
            rhs: gamma.map_or(Value::Null, |g| crate::poly::json::ints(&g.gammas)),
            detail,
            verdicts: Some(json!({
                "palindromic": palindromic,
                "gamma_nonnegative": gamma_verdict,
                "g": crate::poly::json::ints(&g),
                "m_sequence": m_sequence,
            })),
        }
    }

    fn roots(&self) -> Report {
        let params = arbor_params(self.arbor);
        let ehr = match &self.ehrhart {
            Ok(e) => e,
            Err(e) => return failed("conjecture_roots", params, format!("Ehrhart polynomial unavailable: {e}")),
        };
        let nfact = num_rational::BigRational::from_integer(factorial(self.arbor.n() as u64));
        let scaled = ehr.scale(&nfact);
        let Some(scaled_int) = scaled.to_integer() else {
            return failed("conjecture_roots", params, format!("n! * Ehr is not integral: {scaled}"));
        };
        let report = locate_roots(&scaled, &Bound::int(-1), &Bound::int(0)).expect("Ehrhart polynomial is nonzero");
        let pass = report.all_real_in_interval();
        Report {
            check: "conjecture_roots".into(),
            params,
            pass,
            lhs: int_json(&scaled_int),
            rhs: Value::Null,
            detail: format!(
                "{} distinct roots, {} real, {} in [-1,0]",
                report.distinct_roots, report.real_roots, report.real_roots_in_interval
            ),
            verdicts: Some(json!({
                "distinct_roots": report.distinct_roots,
                "real_roots": report.real_roots,
                "roots_in_interval": report.real_roots_in_interval,
            })),
        }
    }
}

/// h* of the arbor polytope against the descent enumerator of `W_tau`.
pub fn check_conjecture_hstar(a: &Arbor) -> Result<Report> {
    Ok(Prepared::new(a)?.hstar())
}

/// Palindromicity, gamma-nonnegativity and the Macaulay condition on the
/// g-vector of the h-vector.
pub fn check_conjecture_hvector(a: &Arbor) -> Result<Report> {
    Ok(Prepared::new(a)?.hvector())
}

/// Every root of `n! * Ehr` is real and lies in `[-1, 0]`.
pub fn check_conjecture_roots(a: &Arbor) -> Result<Report> {
    Ok(Prepared::new(a)?.roots())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Conjecture {
    Hstar,
    Hvector,
    Roots,
    All,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::Hstar => "hstar",
            Conjecture::Hvector => "hvector",
            Conjecture::Roots => "roots",
            Conjecture::All => "all",
        }
    }

    /// Largest size swept without `force`.
    pub fn default_cap(self) -> usize {
        match self {
            Conjecture::Hstar | Conjecture::All => 5,
            Conjecture::Hvector | Conjecture::Roots => 6,
        }
    }

    fn parts(self) -> &'static [Conjecture] {
        match self {
            Conjecture::All => &[Conjecture::Hstar, Conjecture::Hvector, Conjecture::Roots],
            Conjecture::Hstar => &[Conjecture::Hstar],
            Conjecture::Hvector => &[Conjecture::Hvector],
            Conjecture::Roots => &[Conjecture::Roots],
        }
    }
}

impl std::str::FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hstar" => Ok(Conjecture::Hstar),
            "hvector" => Ok(Conjecture::Hvector),
            "roots" => Ok(Conjecture::Roots),
            "all" => Ok(Conjecture::All),
            other => Err(Error::InvalidParameters(format!("unknown conjecture {other:?}"))),
        }
    }
}

/// Runs the selected checks on one arbor.
pub fn check_arbor(a: &Arbor, which: Conjecture) -> Result<Vec<Report>> {
    let prepared = Prepared::new(a)?;
    Ok(which
        .parts()
        .iter()
        .map(|c| match c {
            Conjecture::Hstar => prepared.hstar(),
            Conjecture::Hvector => prepared.hvector(),
            Conjecture::Roots => prepared.roots(),
            Conjecture::All => unreachable!(),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    /// Ignore the size cap.
    pub force: bool,
    /// Record the slowest per-arbor runtime. Off by default so that reports
    /// are reproducible byte for byte.
    pub timing: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub total: usize,
    pub passed: usize,
}

impl Tally {
    fn add(&mut self, pass: bool) {
        self.total += 1;
        self.passed += usize::from(pass);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub size: usize,
    pub conjecture: Conjecture,
    /// Arbors examined; an arbor passes when every selected check does.
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub per_check: BTreeMap<String, Tally>,
    /// Linear arbors reported separately.
    pub linear: Tally,
    pub failures: Vec<Report>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_runtime_ms: Option<f64>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Runs the selected checks over every arbor of the given size.
pub fn sweep(size: usize, which: Conjecture, opts: SweepOptions) -> Result<SweepReport> {
    let cap = which.default_cap();
    if size > cap && !opts.force {
        return Err(Error::SizeCapExceeded { size, cap });
    }
    let arbors: Vec<Arbor> = enumerate_arbors(size).collect();
    sweep_arbors(size, &arbors, which, opts)
}

/// Sweep over an explicit list of arbors of a common size.
pub fn sweep_arbors(size: usize, arbors: &[Arbor], which: Conjecture, opts: SweepOptions) -> Result<SweepReport> {
    let results: Vec<(Vec<Report>, f64)> = arbors
        .par_iter()
        .map(|a| {
            let start = Instant::now();
            let reports = check_arbor(a, which)?;
            Ok((reports, start.elapsed().as_secs_f64() * 1e3))
        })
        .collect::<Result<_>>()?;

    let mut per_check: BTreeMap<String, Tally> = BTreeMap::new();
    let mut linear = Tally::default();
    let mut failures = Vec::new();
    let mut passed = 0;
    let mut worst = 0f64;
    for (a, (reports, ms)) in arbors.iter().zip(results) {
        let ok = reports.iter().all(|r| r.pass);
        passed += usize::from(ok);
        if a.is_linear() {
            linear.add(ok);
        }
        for r in reports {
            per_check.entry(r.check.clone()).or_default().add(r.pass);
            if !r.pass {
                failures.push(r);
            }
        }
        worst = worst.max(ms);
    }
    Ok(SweepReport {
        size,
        conjecture: which,
        total: arbors.len(),
        passed,
        failed: arbors.len() - passed,
        per_check,
        linear,
        failures,
        worst_runtime_ms: opts.timing.then_some(worst),
    })
}
