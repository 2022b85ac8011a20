use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{int, powi, ratio};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// A finite surrogate for the enumeration of a c.e. set `W`: element `x`
/// appears at stage `s` for each listed `(x, s)`.
///
/// A `total` schedule models an infinite set: after the last listed stage it
/// keeps enumerating one fresh element per stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ScheduleJson", into = "ScheduleJson")]
pub struct CESetSchedule {
    elements: Vec<(u64, u64)>,
    total: bool,
}

/// Wire format: `{"elements": [[0, 0], [3, 2]], "total": false}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleJson {
    pub elements: Vec<(u64, u64)>,
    #[serde(default)]
    pub total: bool,
}

impl TryFrom<ScheduleJson> for CESetSchedule {
    type Error = Error;
    fn try_from(j: ScheduleJson) -> Result<Self> {
        CESetSchedule::new(j.elements, j.total)
    }
}

impl From<CESetSchedule> for ScheduleJson {
    fn from(s: CESetSchedule) -> Self {
        ScheduleJson {
            elements: s.elements,
            total: s.total,
        }
    }
}

impl CESetSchedule {
    pub fn new(mut elements: Vec<(u64, u64)>, total: bool) -> Result<Self> {
        let distinct: BTreeSet<u64> = elements.iter().map(|e| e.0).collect();
        if distinct.len() != elements.len() {
            return Err(Error::InvalidSchedule("elements must be distinct".into()));
        }
        elements.sort_by_key(|&(x, s)| (s, x));
        Ok(CESetSchedule { elements, total })
    }

    pub fn empty() -> Self {
        CESetSchedule {
            elements: Vec::new(),
            total: false,
        }
    }

    pub fn finite<I: IntoIterator<Item = (u64, u64)>>(elements: I) -> Result<Self> {
        Self::new(elements.into_iter().collect(), false)
    }

    /// A random finite schedule with up to `max_len` elements below `max_elem`.
    pub fn random<R: Rng>(rng: &mut R, max_elem: u64, max_stage: u64, max_len: usize, total: bool) -> Self {
        let len = rng.gen_range(1..=max_len.max(1));
        let mut chosen = BTreeSet::new();
        while chosen.len() < len.min(max_elem as usize) {
            chosen.insert(rng.gen_range(0..max_elem));
        }
        let elements = chosen.into_iter().map(|x| (x, rng.gen_range(0..=max_stage))).collect();
        Self::new(elements, total).expect("elements are distinct")
    }

    pub fn elements(&self) -> &[(u64, u64)] {
        &self.elements
    }

    pub fn is_total(&self) -> bool {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty() && !self.total
    }

    /// Last stage at which a listed element appears.
    pub fn last_stage(&self) -> u64 {
        self.elements.last().map_or(0, |e| e.1)
    }

    /// `#W_s`: elements enumerated by `stage`, virtual ones included.
    pub fn count_at(&self, stage: u64) -> u64 {
        let listed = self.elements.iter().filter(|e| e.1 <= stage).count() as u64;
        let virtual_ = if self.total {
            stage.saturating_sub(self.last_stage())
        } else {
            0
        };
        listed + virtual_
    }

    /// `#W` for a finite schedule.
    pub fn size(&self) -> Option<u64> {
        (!self.total).then_some(self.elements.len() as u64)
    }

    /// The listed elements, i.e. `W` itself for a finite schedule.
    pub fn members(&self) -> BTreeSet<u64> {
        self.elements.iter().map(|e| e.0).collect()
    }
}

/// How the approximations `q_j` are produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSequence {
    /// `q_j = 1/4 + sum_{(x, s), s <= j} 2 3^-(x+3) - 3^-(j+2)`.
    Schedule(CESetSchedule),
    /// `q_j = q0 + gap (1 - ratio^j)`.
    Geometric { q0: Rational, gap: Rational, ratio: Rational },
}

fn digit_weight(x: u64) -> Rational {
    int(2) * powi(&int(3), -(x as i64 + 3))
}

impl QSequence {
    pub fn q(&self, j: u64) -> Rational {
        match self {
            QSequence::Schedule(s) => {
                let mut q = ratio(1, 4) - powi(&int(3), -(j as i64 + 2));
                for &(x, stage) in s.elements() {
                    if stage <= j {
                        q += digit_weight(x);
                    }
                }
                q
            }
            QSequence::Geometric { q0, gap, ratio } => q0 + gap * (Rational::one() - powi(ratio, j as i64)),
        }
    }

    pub fn prefix(&self, j_max: u64) -> Vec<Rational> {
        (0..=j_max).map(|j| self.q(j)).collect()
    }
}

/// A left-c.e. real `gamma = sup_j q_j` with its approximations. Only the
/// harness knows `gamma`; oracles are handed the [`QSequence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftCEReal {
    q: QSequence,
    gamma: Rational,
}

impl LeftCEReal {
    /// `gamma = 1/4 + sum_{x in W} 2 3^-(x+3)`: base-3 digits in `{0, 2}`, digit
    /// `x + 3` set iff `x in W`.
    pub fn from_schedule(schedule: &CESetSchedule) -> Result<Self> {
        if schedule.elements().is_empty() {
            return Err(Error::EmptySchedule);
        }
        if schedule.is_total() {
            return Err(Error::InvalidSchedule(
                "gamma needs a finite schedule to have a rational ground truth".into(),
            ));
        }
        let gamma = schedule
            .elements()
            .iter()
            .fold(ratio(1, 4), |acc, &(x, _)| acc + digit_weight(x));
        Ok(LeftCEReal {
            q: QSequence::Schedule(schedule.clone()),
            gamma,
        })
    }

    /// `q_j = q0 + gap (1 - ratio^j)` converging to `gamma = q0 + gap`.
    pub fn geometric(q0: Rational, gap: Rational, ratio: Rational) -> Result<Self> {
        let ok = q0 > Rational::zero()
            && gap > Rational::zero()
            && ratio > Rational::zero()
            && ratio < Rational::one()
            && &q0 + &gap < Rational::one();
        if !ok {
            return Err(Error::InvalidSchedule("geometric sequence must increase to a limit in (0, 1)".into()));
        }
        let gamma = &q0 + &gap;
        Ok(LeftCEReal {
            q: QSequence::Geometric { q0, gap, ratio },
            gamma,
        })
    }

    /// `gamma = 2/3`, `q_j = 2/3 - 2^-j / 3`.
    pub fn seed() -> Self {
        Self::geometric(ratio(1, 3), ratio(1, 3), ratio(1, 2)).expect("seed parameters are valid")
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn q(&self, j: u64) -> Rational {
        self.q.q(j)
    }

    pub fn sequence(&self) -> &QSequence {
        &self.q
    }
}

/// The left-c.e. real coded by `schedule`, with its first `j_max + 1` approximations.
pub fn left_ce_from_schedule(schedule: &CESetSchedule, j_max: u64) -> Result<(LeftCEReal, Vec<Rational>)> {
    let r = LeftCEReal::from_schedule(schedule)?;
    let prefix = r.sequence().prefix(j_max);
    Ok((r, prefix))
}
