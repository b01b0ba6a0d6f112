use std::fmt;

use rand::Rng;

use crate::archipelago::AlgorithmId;
use crate::error::{CoreError, Result};

/// Learning rates that, crossed with the three learners, make the repertoire.
pub const ALPHAS: [f64; 2] = [0.1, 0.7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LearnerKind {
    QLearning,
    Sarsa,
    DoubleQ,
}

impl LearnerKind {
    pub const ALL: [LearnerKind; 3] = [LearnerKind::QLearning, LearnerKind::Sarsa, LearnerKind::DoubleQ];

    pub fn name(self) -> &'static str {
        match self {
            LearnerKind::QLearning => "qlearning",
            LearnerKind::Sarsa => "sarsa",
            LearnerKind::DoubleQ => "doubleq",
        }
    }
}

/// A learner kind with its learning rate; one repertoire member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnerSpec {
    pub kind: LearnerKind,
    pub alpha: f64,
}

impl LearnerSpec {
    pub fn new(kind: LearnerKind, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(CoreError::InvalidParam {
                field: "alpha",
                reason: format!("learning rate {alpha} outside (0, 1]"),
            });
        }
        Ok(Self { kind, alpha })
    }

    /// The six standard learners.
    pub fn all() -> Vec<LearnerSpec> {
        LearnerKind::ALL
            .iter()
            .flat_map(|&kind| ALPHAS.iter().map(move |&alpha| LearnerSpec { kind, alpha }))
            .collect()
    }

    /// `rl/<kind>/a<alpha>`, e.g. `rl/sarsa/a0.7`.
    pub fn id(&self) -> AlgorithmId {
        AlgorithmId::new(self.to_string())
    }

    pub fn from_id(id: &AlgorithmId) -> Result<Self> {
        let unknown = || CoreError::UnknownAlgorithm(id.to_string());
        let mut parts = id.as_str().split('/');
        let (Some("rl"), Some(kind), Some(alpha), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(unknown());
        };
        let kind = LearnerKind::ALL
            .into_iter()
            .find(|k| k.name() == kind)
            .ok_or_else(unknown)?;
        let alpha: f64 = alpha
            .strip_prefix('a')
            .and_then(|a| a.parse().ok())
            .ok_or_else(unknown)?;
        Self::new(kind, alpha)
    }
}

impl fmt::Display for LearnerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rl/{}/a{}", self.kind.name(), self.alpha)
    }
}

/// State-action value table, zero-initialised.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    actions: usize,
    values: Vec<f64>,
}

impl QTable {
    pub fn new(states: usize, actions: usize) -> Self {
        Self {
            actions,
            values: vec![0.0; states * actions],
        }
    }

    pub fn states(&self) -> usize {
        self.values.len() / self.actions
    }

    pub fn actions(&self) -> usize {
        self.actions
    }

    pub fn get(&self, s: usize, a: usize) -> f64 {
        self.values[s * self.actions + a]
    }

    pub fn set(&mut self, s: usize, a: usize, v: f64) {
        self.values[s * self.actions + a] = v;
    }

    pub fn row(&self, s: usize) -> &[f64] {
        &self.values[s * self.actions..(s + 1) * self.actions]
    }

    pub fn max(&self, s: usize) -> f64 {
        self.row(s).iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Greedy action; ties go to the lowest index.
    pub fn argmax(&self, s: usize) -> usize {
        argmax(self.row(s))
    }
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub state: usize,
    pub action: usize,
    pub reward: f64,
    pub next_state: usize,
}

pub fn q_update(table: &mut QTable, t: &Transition, alpha: f64, gamma: f64) {
    let q = table.get(t.state, t.action);
    let target = t.reward + gamma * table.max(t.next_state);
    table.set(t.state, t.action, q + alpha * (target - q));
}

/// Bootstraps from the action actually chosen in the next state.
pub fn sarsa_update(table: &mut QTable, t: &Transition, next_action: usize, alpha: f64, gamma: f64) {
    let q = table.get(t.state, t.action);
    let target = t.reward + gamma * table.get(t.next_state, next_action);
    table.set(t.state, t.action, q + alpha * (target - q));
}

/// Updates `a` when `coin` is true (else `b`), choosing the next action with
/// the updated table and evaluating it with the other.
pub fn double_q_update(a: &mut QTable, b: &mut QTable, t: &Transition, coin: bool, alpha: f64, gamma: f64) {
    let (upd, eval) = if coin { (a, &*b) } else { (b, &*a) };
    let next = upd.argmax(t.next_state);
    let q = upd.get(t.state, t.action);
    let target = t.reward + gamma * eval.get(t.next_state, next);
    upd.set(t.state, t.action, q + alpha * (target - q));
}

#[derive(Debug, Clone, PartialEq)]
enum Tables {
    Single(QTable),
    Double(QTable, QTable),
}

/// A tabular learner and its value tables.
#[derive(Debug, Clone, PartialEq)]
pub struct Learner {
    spec: LearnerSpec,
    tables: Tables,
}

impl Learner {
    pub fn new(spec: LearnerSpec, states: usize, actions: usize) -> Self {
        let tables = match spec.kind {
            LearnerKind::DoubleQ => Tables::Double(QTable::new(states, actions), QTable::new(states, actions)),
            _ => Tables::Single(QTable::new(states, actions)),
        };
        Self { spec, tables }
    }

    pub fn spec(&self) -> LearnerSpec {
        self.spec
    }

    pub fn tables(&self) -> Vec<&QTable> {
        match &self.tables {
            Tables::Single(t) => vec![t],
            Tables::Double(a, b) => vec![a, b],
        }
    }

    /// Swaps the two tables of a double learner; no-op otherwise.
    pub fn swap_tables(&mut self) {
        if let Tables::Double(a, b) = &mut self.tables {
            std::mem::swap(a, b);
        }
    }

    /// Values the behaviour policy acts on (the sum of both tables for
    /// double Q-learning).
    pub fn action_values(&self, s: usize) -> Vec<f64> {
        match &self.tables {
            Tables::Single(t) => t.row(s).to_vec(),
            Tables::Double(a, b) => a.row(s).iter().zip(b.row(s)).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn greedy_action(&self, s: usize) -> usize {
        argmax(&self.action_values(s))
    }

    /// Epsilon-greedy. Always consumes exactly two draws so the RNG stream
    /// does not depend on the table contents.
    pub fn select_action<R: Rng + ?Sized>(&self, s: usize, epsilon: f64, rng: &mut R) -> usize {
        let explore = rng.random::<f64>() < epsilon;
        let actions = self.action_values(s).len();
        let random = rng.random_range(0..actions);
        if explore {
            random
        } else {
            self.greedy_action(s)
        }
    }

    /// Applies the learner's own update rule. `next_action` is used only by
    /// SARSA, `coin` only by double Q-learning.
    pub fn learn(&mut self, t: &Transition, next_action: usize, coin: bool, gamma: f64) {
        let alpha = self.spec.alpha;
        match (&mut self.tables, self.spec.kind) {
            (Tables::Single(q), LearnerKind::QLearning) => q_update(q, t, alpha, gamma),
            (Tables::Single(q), LearnerKind::Sarsa) => sarsa_update(q, t, next_action, alpha, gamma),
            (Tables::Double(a, b), _) => double_q_update(a, b, t, coin, alpha, gamma),
            (Tables::Single(_), LearnerKind::DoubleQ) => unreachable!("double learner built with two tables"),
        }
    }
}
