//! Single verification cases and the grids swept over them.

use qeuler::algebra::rational::{int, rat};
use qeuler::algebra::BigRat;
use qeuler::real::RealCtx;
use qeuler::report::{Fields, IdentityId, VerificationReport};
use qeuler::{qeuler as core, verify, zeta, Error, Result};

use crate::Opts;

/// Settings shared by every case of a run.
#[derive(Clone, Debug)]
pub struct Settings {
    pub tol: BigRat,
    pub precision_bits: usize,
    pub force: bool,
    pub check_intermediates: bool,
}

#[derive(Clone, Debug)]
pub enum Case {
    Thm21 { s: BigRat, a: usize, b: usize, x: BigRat, q: BigRat },
    Thm22 { n: usize, a: usize, b: usize },
    Thm24 { n: usize, a: usize, b: usize },
    Prop23 { n: usize },
    Eq5 { m: usize, x: BigRat, q: BigRat },
    Eq13 { x: BigRat, y: BigRat, m: usize, u: BigRat, v: BigRat, q: BigRat },
    Eq17 { m: usize, n: usize },
    Limit { n: usize },
}

impl Case {
    pub fn run(&self, st: &Settings) -> Result<VerificationReport> {
        let ctx = || RealCtx::new(st.precision_bits);
        match self {
            Case::Thm21 { s, a, b, x, q } => {
                zeta::thm21_check(s, *a, *b, x, q, &st.tol, st.force, &mut ctx()?)
            }
            Case::Thm22 { n, a, b } => verify::verify_thm22(*n, *a, *b, st.force),
            Case::Thm24 { n, a, b } => {
                verify::verify_thm24(*n, *a, *b, st.check_intermediates, st.force)
            }
            Case::Prop23 { n } => Ok(verify::verify_prop23(*n)),
            Case::Eq5 { m, x, q } => zeta::interpolation_check(*m, x, q, &st.tol, &mut ctx()?),
            Case::Eq13 { x, y, m, u, v, q } => verify::verify_eq13(x, y, *m, u, v, q),
            Case::Eq17 { m, n } => Ok(verify::verify_eq17(*m, *n)),
            Case::Limit { n } => Ok(core::q_limit_check(*n)),
        }
    }
}

fn need<T: Clone>(value: &Option<T>, flag: &str, id: IdentityId) -> Result<T> {
    value
        .clone()
        .ok_or_else(|| Error::Usage(format!("{} needs --{flag}", id.as_str().to_lowercase())))
}

fn need_rat(value: &Option<BigRat>, flag: &str, id: IdentityId) -> Result<BigRat> {
    need(value, flag, id)
}

/// The single case described by the command-line flags.
pub fn single(id: IdentityId, o: &Opts) -> Result<Case> {
    Ok(match id {
        IdentityId::Thm21 => Case::Thm21 {
            s: need_rat(&o.s, "s", id)?,
            a: need(&o.a, "a", id)?,
            b: need(&o.b, "b", id)?,
            x: need_rat(&o.x, "x", id)?,
            q: need_rat(&o.q, "q", id)?,
        },
        IdentityId::Thm22 => Case::Thm22 {
            n: need(&o.n, "n", id)?,
            a: need(&o.a, "a", id)?,
            b: need(&o.b, "b", id)?,
        },
        IdentityId::Thm24 => Case::Thm24 {
            n: need(&o.n, "n", id)?,
            a: need(&o.a, "a", id)?,
            b: need(&o.b, "b", id)?,
        },
        IdentityId::Prop23 => Case::Prop23 { n: need(&o.n, "n", id)? },
        IdentityId::Eq5 => Case::Eq5 {
            m: need(&o.m, "m", id)?,
            x: need_rat(&o.x, "x", id)?,
            q: need_rat(&o.q, "q", id)?,
        },
        IdentityId::Eq13 => Case::Eq13 {
            x: need_rat(&o.x, "x", id)?,
            y: need_rat(&o.y, "y", id)?,
            m: need(&o.m, "m", id)?,
            u: need_rat(&o.u, "u", id)?,
            v: need_rat(&o.v, "v", id)?,
            q: need_rat(&o.q, "q", id)?,
        },
        IdentityId::Eq17 => Case::Eq17 { m: need(&o.m, "m", id)?, n: need(&o.n, "n", id)? },
        IdentityId::Limit => Case::Limit { n: o.n.unwrap_or(20) },
    })
}

fn odd_values(max: usize) -> Vec<usize> {
    (1..=max).step_by(2).collect()
}

/// Grid of cases for a sweep together with a description of the grid.
///
/// `--n-max` bounds `n` (or `m + n`, or `m`), `--odd-max` bounds the odd
/// parameters `a`, `b`. Fixed flags such as `--x` or `--q` replace the
/// default value lists.
pub fn grid(id: IdentityId, o: &Opts) -> Result<(Fields, Vec<Case>)> {
    let mut desc = Fields::new();
    let list = |flag: &Option<BigRat>, defaults: Vec<BigRat>| match flag {
        Some(v) => vec![v.clone()],
        None => defaults,
    };
    let cases: Vec<Case> = match id {
        IdentityId::Thm22 | IdentityId::Thm24 => {
            let n_max = o.n_max.unwrap_or(10);
            let odd_max = o.odd_max.unwrap_or(7);
            desc.push("n_max", n_max);
            desc.push("odd_max", odd_max);
            let odd = odd_values(odd_max);
            let mut v = Vec::new();
            for n in 0..=n_max {
                for &a in &odd {
                    for &b in &odd {
                        v.push(if id == IdentityId::Thm22 {
                            Case::Thm22 { n, a, b }
                        } else {
                            Case::Thm24 { n, a, b }
                        });
                    }
                }
            }
            v
        }
        IdentityId::Thm21 => {
            let odd_max = o.odd_max.unwrap_or(7);
            desc.push("odd_max", odd_max);
            let ss = list(&o.s, vec![rat(3, 2), rat(5, 2)]);
            let x = o.x.clone().unwrap_or_else(|| rat(7, 10));
            let q = o.q.clone().unwrap_or_else(|| rat(3, 10));
            desc.push("x", &x);
            desc.push("q", &q);
            let odd = odd_values(odd_max);
            let mut v = Vec::new();
            for s in &ss {
                for &a in &odd {
                    for &b in &odd {
                        v.push(Case::Thm21 { s: s.clone(), a, b, x: x.clone(), q: q.clone() });
                    }
                }
            }
            v
        }
        IdentityId::Prop23 => {
            let n_max = o.n_max.unwrap_or(12);
            desc.push("n_max", n_max);
            (0..=n_max).map(|n| Case::Prop23 { n }).collect()
        }
        IdentityId::Eq5 => {
            let n_max = o.n_max.unwrap_or(8);
            desc.push("m_max", n_max);
            let xs = list(&o.x, vec![rat(1, 4), rat(1, 2), rat(3, 4)]);
            let qs = list(&o.q, vec![rat(3, 10), rat(1, 2), rat(7, 10)]);
            let mut v = Vec::new();
            for q in &qs {
                for x in &xs {
                    for m in 0..=n_max {
                        v.push(Case::Eq5 { m, x: x.clone(), q: q.clone() });
                    }
                }
            }
            v
        }
        IdentityId::Eq13 => {
            let n_max = o.n_max.unwrap_or(4);
            desc.push("m_max", n_max);
            let u = o.u.clone().unwrap_or_else(|| rat(1, 2));
            let v = o.v.clone().unwrap_or_else(|| rat(1, 3));
            let q = o.q.clone().unwrap_or_else(|| rat(1, 2));
            let xs = list(&o.x, (0..=3).map(int).collect());
            let ys = list(&o.y, (0..=3).map(int).collect());
            let mut out = Vec::new();
            for x in &xs {
                for y in &ys {
                    for m in 0..=n_max {
                        out.push(Case::Eq13 {
                            x: x.clone(),
                            y: y.clone(),
                            m,
                            u: u.clone(),
                            v: v.clone(),
                            q: q.clone(),
                        });
                    }
                }
            }
            out
        }
        IdentityId::Eq17 => {
            let n_max = o.n_max.unwrap_or(12);
            desc.push("total_max", n_max);
            let mut v = Vec::new();
            for total in 0..=n_max {
                for m in 0..=total {
                    v.push(Case::Eq17 { m, n: total - m });
                }
            }
            v
        }
        IdentityId::Limit => {
            let n_max = o.n_max.unwrap_or(20);
            desc.push("n_max", n_max);
            (0..=n_max).map(|n| Case::Limit { n }).collect()
        }
    };
    if cases.is_empty() {
        return Err(Error::Usage(format!("empty grid for {}", id.as_str().to_lowercase())));
    }
    Ok((desc, cases))
}
