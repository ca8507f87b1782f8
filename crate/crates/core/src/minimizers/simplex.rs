//! Dense two-phase simplex method.
//!
//! Problems are stated as `min cᵀx` subject to linear rows `aᵀx {<=,>=,=} r`
//! and per-variable lower bounds, where a missing bound marks a free
//! variable. Internally every variable is shifted to a zero lower bound or
//! split into positive and negative parts, slack and artificial columns are
//! added, and a full tableau is pivoted.
//!
//! Pricing is Dantzig's most-negative reduced cost. After a run of degenerate
//! pivots the solver switches to Bland's smallest-index rule until the
//! objective strictly improves again, which rules out cycling.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-9;
const DEGENERATE_RUN: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Constraint {
        Constraint { coeffs, relation, rhs }
    }
}

/// `min objectiveᵀ x` subject to `constraints` and `x_j >= lower_bounds[j]`
/// (`None` = free).
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<Option<f64>>,
}

impl LpProblem {
    /// A problem whose variables are all bounded below by zero.
    pub fn nonnegative(objective: Vec<f64>, constraints: Vec<Constraint>) -> LpProblem {
        let n = objective.len();
        LpProblem {
            objective,
            constraints,
            lower_bounds: vec![Some(0.0); n],
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.lower_bounds.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.lower_bounds.len(),
            });
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
            if c.coeffs.iter().any(|v| !v.is_finite()) || !c.rhs.is_finite() {
                return Err(Error::InvalidConfig("LP constraint has non-finite entries".into()));
            }
        }
        let finite_bounds = self.lower_bounds.iter().flatten().all(|v| v.is_finite());
        if self.objective.iter().any(|v| !v.is_finite()) || !finite_bounds {
            return Err(Error::InvalidConfig(
                "LP objective or bounds have non-finite entries".into(),
            ));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest violation of any constraint or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.constraints.iter().map(|c| {
            let lhs: f64 = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match c.relation {
                Relation::Le => (lhs - c.rhs).max(0.0),
                Relation::Ge => (c.rhs - lhs).max(0.0),
                Relation::Eq => (lhs - c.rhs).abs(),
            }
        });
        let bounds = self
            .lower_bounds
            .iter()
            .zip(x)
            .map(|(l, v)| l.map_or(0.0, |l| (l - v).max(0.0)));
        rows.chain(bounds).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

/// How an original variable maps onto tableau columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    Shifted { col: usize, lower: f64 },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// `rows + 1` rows of `cols + 1` entries; the last row holds reduced
    /// costs and the last column the right-hand side.
    data: Vec<f64>,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width() + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn cost_row(&self) -> usize {
        self.rows
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width();
        let p = self.at(row, col);
        for c in 0..w {
            self.data[row * w + c] /= p;
        }
        self.data[row * w + col] = 1.0;
        for r in 0..=self.rows {
            if r == row {
                continue;
            }
            let factor = self.data[r * w + col];
            if factor == 0.0 {
                continue;
            }
            for c in 0..w {
                let v = self.data[row * w + c];
                if v != 0.0 {
                    self.data[r * w + c] -= factor * v;
                }
            }
            self.data[r * w + col] = 0.0;
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Loads `costs` into the reduced-cost row relative to the current basis.
    fn set_costs(&mut self, costs: &[f64]) {
        let w = self.width();
        let cr = self.cost_row();
        let row = &mut self.data[cr * w..(cr + 1) * w];
        row.fill(0.0);
        row[..self.cols].copy_from_slice(&costs[..self.cols]);
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb == 0.0 {
                continue;
            }
            for c in 0..w {
                self.data[cr * w + c] -= cb * self.data[r * w + c];
            }
        }
    }

    /// Current objective value `cᵀx`.
    fn objective(&self) -> f64 {
        -self.at(self.cost_row(), self.cols)
    }

    fn optimize(&mut self, allowed: &[bool], max_pivots: usize) -> Result<()> {
        let mut degenerate = 0usize;
        loop {
            if self.pivots >= max_pivots {
                return Err(Error::NotConverged {
                    iterations: self.pivots,
                    residual: self.objective(),
                });
            }
            let cr = self.cost_row();
            let bland = degenerate >= DEGENERATE_RUN;
            let mut entering = None;
            let mut best = -COST_EPS;
            for (c, _) in allowed.iter().enumerate().take(self.cols).filter(|(_, ok)| **ok) {
                let rc = self.at(cr, c);
                if rc < -COST_EPS {
                    if bland {
                        entering = Some(c);
                        break;
                    }
                    if rc < best {
                        best = rc;
                        entering = Some(c);
                    }
                }
            }
            let Some(col) = entering else {
                return Ok(());
            };

            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, col);
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs(r).max(0.0) / a;
                leaving = match leaving {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        let better =
                            ratio < lratio - 1e-12 || (ratio <= lratio + 1e-12 && self.basis[r] < self.basis[lr]);
                        if better {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
            let Some((row, ratio)) = leaving else {
                return Err(Error::Unbounded);
            };
            if ratio <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(row, col);
        }
    }
}

/// Solves `lp` to a basic optimal solution.
pub fn simplex_solve(lp: &LpProblem) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.objective.len();

    let mut maps = Vec::with_capacity(n);
    let mut cols = 0;
    for bound in &lp.lower_bounds {
        match bound {
            Some(lower) => {
                maps.push(VarMap::Shifted {
                    col: cols,
                    lower: *lower,
                });
                cols += 1;
            }
            None => {
                maps.push(VarMap::Split {
                    pos: cols,
                    neg: cols + 1,
                });
                cols += 2;
            }
        }
    }
    let structural = cols;

    // rows in structural columns, adjusted rhs, slack sign
    let mut rows: Vec<(Vec<f64>, f64, Option<f64>)> = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        let mut coeffs = vec![0.0; structural];
        let mut rhs = c.rhs;
        for (j, &a) in c.coeffs.iter().enumerate() {
            match maps[j] {
                VarMap::Shifted { col, lower } => {
                    coeffs[col] = a;
                    rhs -= a * lower;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[pos] = a;
                    coeffs[neg] = -a;
                }
            }
        }
        let slack = match c.relation {
            Relation::Le => Some(1.0),
            Relation::Ge => Some(-1.0),
            Relation::Eq => None,
        };
        rows.push((coeffs, rhs, slack));
    }

    let m = rows.len();
    let slack_count = rows.iter().filter(|r| r.2.is_some()).count();
    // a row needs an artificial unless its slack enters with +1 after the sign fix
    let needs_artificial: Vec<bool> = rows
        .iter()
        .map(|(_, rhs, slack)| {
            let flip = *rhs < 0.0;
            match slack {
                Some(s) => (if flip { -s } else { *s }) < 0.0,
                None => true,
            }
        })
        .collect();
    let artificial_count = needs_artificial.iter().filter(|&&a| a).count();
    let total_cols = structural + slack_count + artificial_count;

    let width = total_cols + 1;
    let mut tab = Tableau {
        data: vec![0.0; (m + 1) * width],
        rows: m,
        cols: total_cols,
        basis: vec![0; m],
        pivots: 0,
    };
    let mut slack_col = structural;
    let mut art_col = structural + slack_count;
    for (r, (coeffs, rhs, slack)) in rows.iter().enumerate() {
        let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
        for (c, a) in coeffs.iter().enumerate() {
            tab.data[r * width + c] = sign * a;
        }
        tab.data[r * width + total_cols] = sign * rhs;
        if let Some(s) = slack {
            tab.data[r * width + slack_col] = sign * s;
            if !needs_artificial[r] {
                tab.basis[r] = slack_col;
            }
            slack_col += 1;
        }
        if needs_artificial[r] {
            tab.data[r * width + art_col] = 1.0;
            tab.basis[r] = art_col;
            art_col += 1;
        }
    }

    let max_pivots = 50_000 + 50 * (m + total_cols);
    let is_artificial = |c: usize| c >= structural + slack_count;

    if artificial_count > 0 {
        let phase1_costs: Vec<f64> = (0..total_cols)
            .map(|c| if is_artificial(c) { 1.0 } else { 0.0 })
            .collect();
        tab.set_costs(&phase1_costs);
        tab.optimize(&vec![true; total_cols], max_pivots)?;
        let scale = rows.iter().fold(1.0f64, |s, r| s.max(r.1.abs()));
        if tab.objective() > 1e-9 * scale {
            return Err(Error::Infeasible);
        }
        // drive remaining artificials out of the basis; drop redundant rows
        let mut r = 0;
        while r < tab.rows {
            if is_artificial(tab.basis[r]) {
                let replacement = (0..structural + slack_count).find(|&c| tab.at(r, c).abs() > PIVOT_EPS);
                match replacement {
                    Some(c) => tab.pivot(r, c),
                    None => {
                        remove_row(&mut tab, r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let mut costs = vec![0.0; total_cols];
    for (j, map) in maps.iter().enumerate() {
        match *map {
            VarMap::Shifted { col, .. } => costs[col] = lp.objective[j],
            VarMap::Split { pos, neg } => {
                costs[pos] = lp.objective[j];
                costs[neg] = -lp.objective[j];
            }
        }
    }
    tab.set_costs(&costs);
    let allowed: Vec<bool> = (0..total_cols).map(|c| !is_artificial(c)).collect();
    tab.optimize(&allowed, max_pivots)?;

    let mut values = vec![0.0; total_cols];
    for r in 0..tab.rows {
        values[tab.basis[r]] = tab.rhs(r);
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Shifted { col, lower } => lower + values[col],
            VarMap::Split { pos, neg } => values[pos] - values[neg],
        })
        .collect();
    let objective = lp.evaluate(&x);
    Ok(LpSolution {
        x,
        objective,
        pivots: tab.pivots,
    })
}

fn remove_row(tab: &mut Tableau, row: usize) {
    let w = tab.width();
    tab.data.drain(row * w..(row + 1) * w);
    tab.basis.remove(row);
    tab.rows -= 1;
}
