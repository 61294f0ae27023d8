//! Instance analysis and the counting certificate against a normal
//! complement of G in V(FG).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgElem, GroupAlgebra};
use crate::cqstruct::{ComplementSearch, CqContext, CqError, StructuralScan};
use crate::field::{FieldCtx, FieldElem, FieldError, QDecomp};
use crate::group::{Group, GroupError};
use crate::unitgroup::{self, UnitGroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifierError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cq(#[from] CqError),
    #[error(transparent)]
    UnitGroup(#[from] UnitGroupError),
    #[error("branch mismatch: {0}")]
    BranchMismatch(String),
}

/// A validated field, group and the derived constants.
#[derive(Clone, Debug)]
pub struct Instance {
    pub alg: Arc<GroupAlgebra>,
    pub decomp: QDecomp,
    /// `|A| = p^n`.
    pub n: u32,
}

impl Instance {
    pub fn new(
        p: u64,
        f: u32,
        modulus: Option<&[i64]>,
        q: u64,
        factors: &[u64],
        action: &[Vec<i64>],
    ) -> Result<Self, VerifierError> {
        let field = FieldCtx::new(p, f, modulus)?;
        let decomp = field.q_decompose(q)?;
        let group = Group::new(&field, q, factors, action)?;
        let n = group.abelian().n;
        Ok(Instance {
            alg: GroupAlgebra::new(field, group),
            decomp,
            n,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        self.alg.field()
    }

    pub fn group(&self) -> &Group {
        self.alg.group()
    }

    pub fn q(&self) -> u64 {
        self.decomp.q
    }

    pub fn cq(&self) -> Result<CqContext, VerifierError> {
        Ok(CqContext::for_algebra(&self.alg)?)
    }

    pub fn summary(&self) -> InstanceSummary {
        let f = self.field();
        let show = |x: FieldElem| f.display(x).to_string();
        InstanceSummary {
            p: f.p(),
            f: f.degree(),
            modulus: f.modulus().to_vec(),
            q: self.q(),
            a_factors: self.group().abelian().factors.clone(),
            n: self.n,
            action: self.group().action().matrix.clone(),
            zeta: show(f.zeta()),
            omega: show(self.decomp.omega),
            eta: show(self.decomp.eta),
            s: self.decomp.s,
            m: self.decomp.m,
        }
    }
}

/// Derived constants echoed in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub p: u64,
    pub f: u32,
    pub modulus: Vec<u32>,
    pub q: u64,
    pub a_factors: Vec<u64>,
    pub n: u32,
    pub action: Vec<Vec<u64>>,
    pub zeta: String,
    pub omega: String,
    pub eta: String,
    pub s: u64,
    pub m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `m > 1`: B has no complement in V_*(FB).
    MGreaterOne,
    /// `m = 1`, `s + 1 ≥ q` and `2n ≥ f(q - 1)`: the counting inequality.
    Counting,
    /// No branch applies.
    Silent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub m_gt_1: bool,
    pub s_plus_1_ge_q: bool,
    pub two_n_ge_f_q_minus_1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub branch: Branch,
    pub conditions: Conditions,
    /// Conditions that fail, when the branch is `Silent`.
    pub failed: Vec<String>,
    pub note: Option<String>,
}

pub fn analyze(inst: &Instance) -> Analysis {
    let d = &inst.decomp;
    let q = inst.q();
    let f = inst.field().degree() as u64;
    let conditions = Conditions {
        m_gt_1: d.m > 1,
        s_plus_1_ge_q: d.s + 1 >= q,
        two_n_ge_f_q_minus_1: 2 * inst.n as u64 >= f * (q - 1),
    };
    let mut failed = Vec::new();
    let branch = if conditions.m_gt_1 {
        Branch::MGreaterOne
    } else {
        if !conditions.s_plus_1_ge_q {
            failed.push(format!("s + 1 = {} < q = {q}", d.s + 1));
        }
        if !conditions.two_n_ge_f_q_minus_1 {
            failed.push(format!("2n = {} < f(q - 1) = {}", 2 * inst.n, f * (q - 1)));
        }
        if failed.is_empty() {
            Branch::Counting
        } else {
            Branch::Silent
        }
    };
    let note = match branch {
        Branch::Counting if q == 3 => Some(
            "q = 3 is covered by a cited theorem; the counting branch is evaluated independently and \
             its verdict is consistent with that theorem"
                .to_string(),
        ),
        Branch::Silent => Some("theorem silent: no branch of the hypotheses applies".to_string()),
        _ => None,
    };
    Analysis {
        branch,
        conditions,
        failed,
        note,
    }
}

/// `cofactor · p^exp`, kept alongside its full value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPower {
    pub p: u64,
    pub exp: u64,
    pub cofactor: BigUint,
}

impl PPower {
    pub fn new(p: u64, exp: u64, cofactor: BigUint) -> Self {
        PPower { p, exp, cofactor }
    }

    pub fn value(&self) -> BigUint {
        &self.cofactor * BigUint::from(self.p).pow(self.exp as u32)
    }
}

impl fmt::Display for PPower {
    /// `2·7^9`, or `7^8` when the cofactor is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cofactor == BigUint::from(1u32) {
            write!(f, "{}^{}", self.p, self.exp)
        } else {
            write!(f, "{}·{}^{}", self.cofactor, self.p, self.exp)
        }
    }
}

impl Serialize for PPower {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            factored: String,
            decimal: String,
            p: u64,
            exp: u64,
            cofactor: String,
        }
        Repr {
            factored: self.to_string(),
            decimal: self.value().to_string(),
            p: self.p,
            exp: self.exp,
            cofactor: self.cofactor.to_string(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NoNormalComplement,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateDims {
    pub gamma: usize,
    pub s1: usize,
    pub s2: usize,
    pub centralizer_b: usize,
    pub centralizer_b_skew: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub s: u64,
    pub m: u32,
    pub n: u32,
    pub f: u32,
    pub q: u64,
    pub dims: CertificateDims,
    /// `|(1 + Γ(A))_*| = p^{f·dim S₂}`.
    pub unitary_gamma_order: PPower,
    /// `(sq)^{(q-1)/2}/q - 1`.
    pub bound: String,
    pub a_order: String,
    /// `|A| > (sq)^{(q-1)/2}/q - 1`.
    pub a_exceeds_bound: bool,
    /// `(q - 1)·|(1 + Γ(A))_*|`.
    pub l: PPower,
    /// `(|(1 + Γ(A))_*|/|A|)·((sq)^{(q-1)/2}/q - 1)`.
    pub r: PPower,
    pub l_gt_r: bool,
    /// `|C_{(1+Γ(A))_*}(b)|·|Cl*_b| = |(1 + Γ(A))_*|`.
    pub class_count_consistent: bool,
    pub verdict: Verdict,
}

/// The exact counting inequality for the `m = 1` branch.
pub fn counting_certificate(inst: &Instance) -> Result<Certificate, VerifierError> {
    let analysis = analyze(inst);
    if analysis.branch != Branch::Counting {
        let why = match analysis.branch {
            Branch::MGreaterOne => format!("m = {} > 1 uses the complement search", inst.decomp.m),
            _ => analysis.failed.join("; "),
        };
        return Err(VerifierError::BranchMismatch(why));
    }
    let alg = &inst.alg;
    let d = &inst.decomp;
    let p = inst.field().p();
    let f = inst.field().degree();
    let q = inst.q();
    let (s1, s2) = unitgroup::star_slice_dims(alg);
    let cb = unitgroup::centralizer_dims(&AlgElem::b_pow(alg, 1))?;
    let one = BigUint::from(1u32);
    let unitary_exp = f as u64 * s2 as u64;
    let r_half = ((q - 1) / 2) as u32;
    // (sq)^r / q - 1 = s^r q^{r-1} - 1
    let bound = BigUint::from(d.s).pow(r_half) * BigUint::from(q).pow(r_half - 1) - &one;
    let a_order = BigUint::from(p).pow(inst.n);
    let l = PPower::new(p, unitary_exp, BigUint::from(q - 1));
    let r = PPower::new(p, unitary_exp - inst.n as u64, bound.clone());
    let l_gt_r = l.value() > r.value();
    let a_exceeds_bound = a_order > bound;
    let cl_star_exp = f as u64 * (s2 - cb.skew_dim) as u64;
    let class_count_consistent = BigUint::from(p).pow((f as u64 * cb.skew_dim as u64) as u32)
        * BigUint::from(p).pow(cl_star_exp as u32)
        == BigUint::from(p).pow(unitary_exp as u32);
    let verdict = if l_gt_r && a_exceeds_bound {
        Verdict::NoNormalComplement
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        s: d.s,
        m: d.m,
        n: inst.n,
        f,
        q,
        dims: CertificateDims {
            gamma: alg.gamma_dim(),
            s1,
            s2,
            centralizer_b: cb.dim,
            centralizer_b_skew: cb.skew_dim,
        },
        unitary_gamma_order: PPower::new(p, unitary_exp, one),
        bound: bound.to_string(),
        a_order: a_order.to_string(),
        a_exceeds_bound,
        l,
        r,
        l_gt_r,
        class_count_consistent,
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MGtOneReport {
    pub search: ComplementSearch,
    pub scan: StructuralScan,
    pub verdict: Verdict,
}

/// Exhaustive confirmation that B has no complement in V_*(FB) when `m > 1`.
pub fn m_gt_1_no_complement(inst: &Instance, budget: u64) -> Result<MGtOneReport, VerifierError> {
    if inst.decomp.m <= 1 {
        return Err(VerifierError::BranchMismatch(format!(
            "m = {} is not greater than 1",
            inst.decomp.m
        )));
    }
    let cq = inst.cq()?;
    let search = cq.complement_search(budget)?;
    let scan = cq.structural_scan(budget)?;
    let verdict = if !search.has_complement() && scan.uncovered == 0 {
        Verdict::NoNormalComplement
    } else {
        Verdict::Inconclusive
    };
    Ok(MGtOneReport { search, scan, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub analysis: Analysis,
    pub certificate: Option<Certificate>,
    pub m_gt_1: Option<MGtOneReport>,
}

/// Runs whichever branch applies.
pub fn verify(inst: &Instance, budget: u64) -> Result<VerifyReport, VerifierError> {
    let analysis = analyze(inst);
    let (certificate, m_gt_1) = match analysis.branch {
        Branch::Counting => (Some(counting_certificate(inst)?), None),
        Branch::MGreaterOne => (None, Some(m_gt_1_no_complement(inst, budget)?)),
        Branch::Silent => (None, None),
    };
    Ok(VerifyReport {
        analysis,
        certificate,
        m_gt_1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqstruct::DEFAULT_BUDGET;

    #[test]
    fn branches() {
        let c7 = Instance::new(7, 1, None, 3, &[7], &[vec![2]]).unwrap();
        let a = analyze(&c7);
        assert_eq!(a.branch, Branch::Counting);
        assert!(a.note.is_some());
        let c19 = Instance::new(19, 1, None, 3, &[19], &[vec![7]]).unwrap();
        assert_eq!(analyze(&c19).branch, Branch::MGreaterOne);
        let f11 = Instance::new(11, 1, None, 5, &[11, 11], &[vec![3, 0], vec![0, 9]]).unwrap();
        let a = analyze(&f11);
        assert_eq!(a.branch, Branch::Silent);
        assert_eq!(a.failed.len(), 1);
        assert!(matches!(
            counting_certificate(&f11),
            Err(VerifierError::BranchMismatch(_))
        ));
        assert!(matches!(
            counting_certificate(&c19),
            Err(VerifierError::BranchMismatch(_))
        ));
        assert!(matches!(
            m_gt_1_no_complement(&c7, DEFAULT_BUDGET),
            Err(VerifierError::BranchMismatch(_))
        ));
    }

    #[test]
    fn c7_certificate() {
        let c7 = Instance::new(7, 1, None, 3, &[7], &[vec![2]]).unwrap();
        let c = counting_certificate(&c7).unwrap();
        assert_eq!(c.l.to_string(), "2·7^9");
        assert_eq!(c.r.to_string(), "7^8");
        assert_eq!(c.bound, "1");
        assert!(c.l_gt_r && c.a_exceeds_bound && c.class_count_consistent);
        assert_eq!(c.verdict, Verdict::NoNormalComplement);
    }

    #[test]
    fn q_not_dividing() {
        let err = Instance::new(7, 1, None, 5, &[7], &[vec![2]]).unwrap_err();
        assert_eq!(err, VerifierError::Field(FieldError::QDoesNotDivide { q: 5, order: 6 }));
    }

    #[test]
    fn degenerate_q3_refuses() {
        // f = 2: 2n = 2 < f(q - 1) = 4
        let inst = Instance::new(7, 2, None, 3, &[7], &[vec![2]]).unwrap();
        assert_eq!(analyze(&inst).branch, Branch::Silent);
        assert!(matches!(
            counting_certificate(&inst),
            Err(VerifierError::BranchMismatch(_))
        ));
    }
}
