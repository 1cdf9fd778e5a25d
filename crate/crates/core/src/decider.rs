//! Rule engine mapping a graph and a pair of lp spaces to a
//! flattenability verdict with a full citation trail. Rules are tried in
//! a fixed order and only state what the underlying theorems license;
//! everything else is reported as unknown.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, MinorModel, Pattern};
use crate::minor::{
    forbidden_minor_check_with_budget, has_minor_with_budget, MinorError, DEFAULT_NODE_BUDGET,
};
use crate::space::{Dim, Exponent, SpaceDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Flattenable,
    NotFlattenable,
    Unknown,
}

/// Evidence attached to a decisive verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A forbidden minor found in the graph.
    Minor {
        pattern: String,
        model: MinorModel,
    },
    /// A shipped distance-matrix certificate for the pattern found.
    Certificate { name: String },
    /// A dimension-bound instance.
    Bound { description: String },
}

/// One entry of the decision trail: a rule that was evaluated and what
/// came of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrailEntry {
    pub rule: String,
    pub applied: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    /// Rule that decided the verdict; absent iff status is unknown.
    pub rule: Option<String>,
    pub witness: Option<Witness>,
    pub trail: Vec<TrailEntry>,
}

impl Verdict {
    fn decided(status: Status, rule: &str, witness: Option<Witness>, trail: Vec<TrailEntry>) -> Self {
        Verdict {
            status,
            rule: Some(rule.to_string()),
            witness,
            trail,
        }
    }

    fn unknown(trail: Vec<TrailEntry>) -> Self {
        Verdict {
            status: Status::Unknown,
            rule: None,
            witness: None,
            trail,
        }
    }
}

/// Decides (x, y)-flattenability of `g` with the default minor budget.
pub fn decide(g: &Graph, x: SpaceDescriptor, y: SpaceDescriptor) -> Verdict {
    decide_with_budget(g, x, y, DEFAULT_NODE_BUDGET)
}

pub fn decide_with_budget(
    g: &Graph,
    x: SpaceDescriptor,
    y: SpaceDescriptor,
    budget: u64,
) -> Verdict {
    let mut ctx = Ctx {
        budget,
        trail: Vec::new(),
    };
    match ctx.base_rules(g, x, y) {
        Some(mut v) => {
            v.trail = std::mem::take(&mut ctx.trail);
            v
        }
        None => ctx.propagation(g, x, y),
    }
}

struct Ctx {
    budget: u64,
    trail: Vec<TrailEntry>,
}

impl Ctx {
    fn skip(&mut self, rule: &str, note: &str) {
        self.trail.push(TrailEntry {
            rule: rule.to_string(),
            applied: false,
            note: note.to_string(),
        });
    }

    fn hit(&mut self, rule: &str, note: &str) {
        self.trail.push(TrailEntry {
            rule: rule.to_string(),
            applied: true,
            note: note.to_string(),
        });
    }

    /// Decides via the family of forbidden minors, recording the witness.
    fn minor_rule(
        &mut self,
        rule: &str,
        note: &str,
        g: &Graph,
        family: &[Pattern],
    ) -> Verdict {
        self.hit(rule, note);
        match forbidden_minor_check_with_budget(g, family, self.budget) {
            Ok(Some((pattern, model))) => {
                let witness = Witness::Minor {
                    pattern: pattern.to_string(),
                    model,
                };
                Verdict::decided(Status::NotFlattenable, rule, Some(witness), Vec::new())
            }
            Ok(None) => Verdict::decided(Status::Flattenable, rule, None, Vec::new()),
            Err(MinorError::BudgetExceeded { budget }) => {
                self.skip(
                    rule,
                    &format!("minor search exceeded the node budget of {budget}"),
                );
                Verdict::unknown(Vec::new())
            }
            Err(e) => {
                self.skip(rule, &format!("minor search failed: {e}"));
                Verdict::unknown(Vec::new())
            }
        }
    }

    /// Rules R1 through R10 in order; `None` means fall through to R11.
    fn base_rules(&mut self, g: &Graph, x: SpaceDescriptor, y: SpaceDescriptor) -> Option<Verdict> {
        // R1: a line as target
        if y.dim == Dim::Finite(1) {
            self.hit("R1", "dim Y = 1: every graph flattens to a line's lengths");
            return Some(Verdict::decided(Status::Flattenable, "R1", None, Vec::new()));
        }
        self.skip("R1", "dim Y is not 1");

        // R2: a line as source
        if x.dim == Dim::Finite(1) {
            self.hit("R2", "dim X = 1: flattenable iff the graph is a forest");
            let status = if g.is_forest() {
                Status::Flattenable
            } else {
                Status::NotFlattenable
            };
            return Some(Verdict::decided(status, "R2", None, Vec::new()));
        }
        self.skip("R2", "dim X is not 1");

        // R3: Y embeds isometrically into X (including the l1^2 / linf^2
        // isometry)
        if (x.same_exponent(y) && y.dim.le(x.dim))
            || (x.is_isometric_linf2() && y.is_isometric_linf2())
            || (x.is_isometric_l22() && y.is_isometric_l22())
        {
            self.hit("R3", "Y embeds isometrically into X");
            return Some(Verdict::decided(Status::Flattenable, "R3", None, Vec::new()));
        }
        self.skip("R3", "Y does not trivially embed into X");

        // R4: Euclidean sources of dimension at most 3
        if x.p == Exponent::Finite(2.0)
            && matches!(x.dim, Dim::Finite(d) if d <= 3)
            && y.p == Exponent::Finite(2.0)
            && y.dim == Dim::Infinite
        {
            let d = x.dim.finite().expect("finite by guard");
            let family: &[Pattern] = match d {
                1 => &[Pattern::Kn(3)],
                2 => &[Pattern::Kn(4)],
                _ => &[Pattern::Kn(5), Pattern::K222],
            };
            let note = format!("X = l2^{d}, Y = l2: forbidden minors {family:?}");
            return Some(self.minor_rule("R4", &note, g, family));
        }
        self.skip("R4", "not the (l2^d, l2) case with d <= 3");

        // R5: the linf plane (or its isometric copy l1^2)
        if x.is_isometric_linf2() && y.dim == Dim::Infinite {
            return Some(self.minor_rule(
                "R5",
                "X isometric to linf^2, Y infinite-dimensional: forbidden minors {W4, K4eK4}",
                g,
                &[Pattern::W4, Pattern::K4eK4],
            ));
        }
        self.skip("R5", "X is not a copy of linf^2 with infinite-dimensional Y");

        // R6: other normed planes against targets of dimension >= 3
        if matches!(x.p, Exponent::Finite(p) if p > 1.0)
            && !x.p.is_infinite()
            && x.dim == Dim::Finite(2)
            && !x.is_isometric_linf2()
            && Dim::Finite(3).le(y.dim)
        {
            return Some(self.minor_rule(
                "R6",
                "X a plane not isometric to linf^2, dim Y >= 3: forbidden minor K4",
                g,
                &[Pattern::Kn(4)],
            ));
        }
        self.skip("R6", "not a non-linf plane against dim Y >= 3");

        // R7: strictly convex source, non-strictly-convex target
        if x.is_strictly_convex()
            && Dim::Finite(2).le(x.dim)
            && !y.is_strictly_convex()
            && Dim::Finite(2).le(y.dim)
        {
            return Some(self.minor_rule(
                "R7",
                "X strictly convex, Y not strictly convex (both dim >= 2): forbidden minor K4",
                g,
                &[Pattern::Kn(4)],
            ));
        }
        self.skip("R7", "not a strictly convex X against a non-strictly-convex Y");

        // R8: the Euclidean plane against anything
        if x.is_isometric_l22() {
            if y.dim == Dim::Finite(1) || y.is_isometric_l22() {
                self.hit("R8", "X = l2^2 and Y embeds into it");
                return Some(Verdict::decided(Status::Flattenable, "R8", None, Vec::new()));
            }
            return Some(self.minor_rule(
                "R8",
                "X = l2^2, general Y: forbidden minor K4",
                g,
                &[Pattern::Kn(4)],
            ));
        }
        self.skip("R8", "X is not l2^2");

        // R9: dimension sufficiency for same-exponent targets
        if x.same_exponent(y) && y.dim == Dim::Infinite {
            if let Dim::Finite(d) = x.dim {
                let n = g.vertex_count();
                let sufficient = match x.p {
                    Exponent::Infinity if n >= 4 => Some(n - 2),
                    Exponent::Infinity => None,
                    Exponent::Finite(_) => Some(if n <= 1 { 1 } else { n * (n - 1) / 2 }),
                };
                if let Some(s) = sufficient {
                    if d >= s {
                        let note =
                            format!("dim {d} >= {s} suffices for any graph on {n} vertices");
                        self.hit("R9", &note);
                        let witness = Witness::Bound { description: note };
                        return Some(Verdict::decided(
                            Status::Flattenable,
                            "R9",
                            Some(witness),
                            Vec::new(),
                        ));
                    }
                    self.skip("R9", &format!("dim {d} is below the sufficient dim {s}"));
                } else {
                    self.skip("R9", "no sufficiency bound for this exponent and order");
                }
            } else {
                self.skip("R9", "dim X is infinite (covered by R3)");
            }
        } else {
            self.skip("R9", "Y is not the same-exponent infinite-dimensional space");
        }

        // R10: complete-minor lower bounds for same-exponent targets
        if x.same_exponent(y) && y.dim == Dim::Infinite {
            if let Dim::Finite(d) = x.dim {
                match self.largest_clique_minor(g) {
                    Ok(Some((n, model))) => {
                        if let Some((bound, why)) = clique_lower_bound(x.p, n, d) {
                            let note = format!(
                                "K{n} minor present and dim {d} < {bound}: {why}"
                            );
                            self.hit("R10", &note);
                            let witness = Witness::Minor {
                                pattern: format!("K{n}"),
                                model,
                            };
                            return Some(Verdict::decided(
                                Status::NotFlattenable,
                                "R10",
                                Some(witness),
                                Vec::new(),
                            ));
                        }
                        self.skip(
                            "R10",
                            &format!("largest clique minor K{n} gives no bound above dim {d}"),
                        );
                    }
                    Ok(None) => self.skip("R10", "no clique minor of order >= 3"),
                    Err(MinorError::BudgetExceeded { budget }) => self.skip(
                        "R10",
                        &format!("minor search exceeded the node budget of {budget}"),
                    ),
                    Err(e) => self.skip("R10", &format!("minor search failed: {e}")),
                }
            } else {
                self.skip("R10", "dim X is infinite");
            }
        } else {
            self.skip("R10", "Y is not the same-exponent infinite-dimensional space");
        }

        None
    }

    /// Largest n >= 3 with a K_n minor in g, with a witness.
    fn largest_clique_minor(
        &mut self,
        g: &Graph,
    ) -> Result<Option<(usize, MinorModel)>, MinorError> {
        for n in (3..=g.vertex_count()).rev() {
            if let Some(model) = has_minor_with_budget(g, &Graph::complete(n), self.budget)? {
                return Ok(Some((n, model)));
            }
        }
        Ok(None)
    }

    /// R11: one level of propagation through the interval and extremality
    /// theorems, probing sub-queries with the base rules only.
    fn propagation(mut self, g: &Graph, x: SpaceDescriptor, y: SpaceDescriptor) -> Verdict {
        // flattenable into linf propagates to every target
        let linf = SpaceDescriptor::new(Exponent::Infinity, Dim::Infinite);
        if y != linf {
            if let Some(sub) = self.probe(g, x, linf) {
                if sub.status == Status::Flattenable {
                    let note = format!(
                        "(X, linf)-flattenable by {} propagates to every Y",
                        sub.rule.as_deref().unwrap_or("?")
                    );
                    self.hit("R11", &note);
                    let trail = std::mem::take(&mut self.trail);
                    return Verdict::decided(Status::Flattenable, "R11", None, trail);
                }
            }
        }

        // flattenable into lp (p <= 2) propagates up to lq for p <= q <= 2
        if let (Exponent::Finite(q), Dim::Infinite) = (y.p, y.dim) {
            if q <= 2.0 {
                let l1 = SpaceDescriptor::new(Exponent::finite(1.0), Dim::Infinite);
                if let Some(sub) = self.probe(g, x, l1) {
                    if sub.status == Status::Flattenable {
                        let note = format!(
                            "(X, l1)-flattenable by {} propagates to lq for 1 <= q <= 2",
                            sub.rule.as_deref().unwrap_or("?")
                        );
                        self.hit("R11", &note);
                        let trail = std::mem::take(&mut self.trail);
                        return Verdict::decided(Status::Flattenable, "R11", None, trail);
                    }
                }
            }
        }

        // not flattenable into l2 rules out every infinite-dimensional target
        if y.dim == Dim::Infinite && x.dim.finite().is_some() {
            let l2 = SpaceDescriptor::new(Exponent::finite(2.0), Dim::Infinite);
            if y != l2 {
                if let Some(sub) = self.probe(g, x, l2) {
                    if sub.status == Status::NotFlattenable {
                        let note = format!(
                            "not (X, l2)-flattenable by {} rules out every infinite-dimensional Y",
                            sub.rule.as_deref().unwrap_or("?")
                        );
                        self.hit("R11", &note);
                        let witness = sub.witness;
                        let trail = std::mem::take(&mut self.trail);
                        return Verdict::decided(Status::NotFlattenable, "R11", witness, trail);
                    }
                }
            }
        }

        self.skip("R11", "no propagation path produced a decision");
        Verdict::unknown(self.trail)
    }

    /// Runs the base rules on a sub-query, folding its trail into ours
    /// with a prefix.
    fn probe(&mut self, g: &Graph, x: SpaceDescriptor, y: SpaceDescriptor) -> Option<Verdict> {
        let mut sub = Ctx {
            budget: self.budget,
            trail: Vec::new(),
        };
        let out = sub.base_rules(g, x, y);
        for mut entry in sub.trail {
            entry.rule = format!("R11[{y}]:{}", entry.rule);
            self.trail.push(entry);
        }
        out
    }
}

/// Smallest dimension known insufficient bound: returns (bound, reason)
/// when a K_n minor forbids flattening below dimension `bound`.
fn clique_lower_bound(p: Exponent, n: usize, d: usize) -> Option<(usize, String)> {
    let mut best: Option<(usize, String)> = None;
    let mut push = |bound: usize, why: String| {
        if d < bound && best.as_ref().is_none_or(|(b, _)| bound > *b) {
            best = Some((bound, why));
        }
    };
    match p {
        Exponent::Finite(1.0) => {
            if n >= 4 {
                let b = (n - 2) * (n - 3) / 2;
                push(b, format!("p = 1 needs dim >= C({},2) = {b} for K{n}", n - 2));
            }
        }
        Exponent::Finite(pf) if pf > 1.0 && pf < 2.0 => {
            if n >= 3 {
                let b = (n - 1) * (n - 2) / 2;
                push(b, format!("1 < p < 2 needs dim >= C({},2) = {b} for K{n}", n - 1));
            }
        }
        Exponent::Infinity => {
            push(2 * n / 3, format!("p = inf needs dim >= floor(2*{n}/3) for K{n}"));
            if (4..=7).contains(&n) {
                push(n - 2, format!("K{n} is not flattenable below dim {}", n - 2));
            }
        }
        Exponent::Finite(_) => {}
    }
    best
}

/// Known dimension thresholds for complete graphs in (lp^d, lp):
/// the dimension known sufficient, and the smallest dimension not known
/// insufficient (realizations below it fail), when such bounds exist.
pub fn kn_dim_table(n: usize, p: Exponent) -> (usize, Option<usize>) {
    assert!(n >= 2, "need n >= 2");
    let sufficient = match p {
        Exponent::Infinity => match n {
            2 => 1,
            3 => 2,
            _ => n - 2,
        },
        Exponent::Finite(_) => {
            if n == 2 {
                1
            } else {
                n * (n - 1) / 2
            }
        }
    };
    let insufficient_below = match p {
        Exponent::Finite(pf) if pf == 1.0 && n >= 4 => Some((n - 2) * (n - 3) / 2),
        Exponent::Finite(pf) if pf > 1.0 && pf < 2.0 && n >= 3 => Some((n - 1) * (n - 2) / 2),
        Exponent::Infinity => {
            let mut b = 2 * n / 3;
            if (4..=7).contains(&n) {
                b = b.max(n - 2);
            }
            (b > 0).then_some(b)
        }
        _ => None,
    };
    (sufficient, insufficient_below)
}

/// Human-readable account of a verdict: the decision, its rule and
/// witness, and the full trail of rules considered.
pub fn explain(v: &Verdict) -> String {
    let mut out = String::new();
    let status = match v.status {
        Status::Flattenable => "flattenable",
        Status::NotFlattenable => "not flattenable",
        Status::Unknown => "unknown",
    };
    match &v.rule {
        Some(rule) => out.push_str(&format!("{status} (rule {rule})\n")),
        None => out.push_str(&format!("{status}: no rule applies\n")),
    }
    match &v.witness {
        Some(Witness::Minor { pattern, model }) => {
            out.push_str(&format!(
                "witness: {pattern} minor with branch sets {:?}\n",
                model.branch_sets
            ));
        }
        Some(Witness::Certificate { name }) => {
            out.push_str(&format!("witness: certificate {name}\n"));
        }
        Some(Witness::Bound { description }) => {
            out.push_str(&format!("witness: {description}\n"));
        }
        None => {}
    }
    out.push_str("trail:\n");
    for entry in &v.trail {
        let mark = if entry.applied { "applied" } else { "skipped" };
        out.push_str(&format!("  {} {}: {}\n", entry.rule, mark, entry.note));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2(d: usize) -> SpaceDescriptor {
        SpaceDescriptor::finite(2.0, d)
    }

    fn l2_inf() -> SpaceDescriptor {
        SpaceDescriptor::new(Exponent::finite(2.0), Dim::Infinite)
    }

    fn linf(d: usize) -> SpaceDescriptor {
        SpaceDescriptor::new(Exponent::Infinity, Dim::Finite(d))
    }

    fn linf_inf() -> SpaceDescriptor {
        SpaceDescriptor::new(Exponent::Infinity, Dim::Infinite)
    }

    #[test]
    fn spec_examples() {
        let k4 = Graph::complete(4);
        let v = decide(&k4, l2(3), l2_inf());
        assert_eq!(v.status, Status::Flattenable);
        assert_eq!(v.rule.as_deref(), Some("R4"));

        let v = decide(&k4, l2(3), linf_inf());
        assert_eq!(v.status, Status::NotFlattenable);
        assert_eq!(v.rule.as_deref(), Some("R7"));

        let w4 = Graph::w4();
        let v = decide(&w4, linf(2), l2_inf());
        assert_eq!(v.status, Status::NotFlattenable);
        assert_eq!(v.rule.as_deref(), Some("R5"));
        match v.witness {
            Some(Witness::Minor { pattern, model }) => {
                assert_eq!(pattern, "W4");
                assert!(model.validate(&w4, &Graph::w4()).is_ok());
            }
            other => panic!("expected a minor witness, got {other:?}"),
        }
    }

    #[test]
    fn line_rules() {
        let tree = Graph::path(5);
        let k3 = Graph::complete(3);
        assert_eq!(decide(&k3, l2(2), SpaceDescriptor::finite(2.0, 1)).status, Status::Flattenable);
        assert_eq!(decide(&tree, SpaceDescriptor::finite(2.0, 1), l2_inf()).status, Status::Flattenable);
        assert_eq!(decide(&k3, SpaceDescriptor::finite(2.0, 1), l2_inf()).status, Status::NotFlattenable);
    }

    #[test]
    fn isometric_embedding_rule() {
        let g = Graph::w4();
        let v = decide(&g, l2(5), l2(3));
        assert_eq!(v.status, Status::Flattenable);
        assert_eq!(v.rule.as_deref(), Some("R3"));
        let v = decide(&g, l2_inf(), l2(3));
        assert_eq!(v.status, Status::Flattenable);
        assert_eq!(v.rule.as_deref(), Some("R3"));
    }

    #[test]
    fn k7_dimension_bounds() {
        let k7 = Graph::complete(7);
        let v = decide(&k7, linf(5), linf_inf());
        assert_eq!(v.status, Status::Flattenable);
        assert_eq!(v.rule.as_deref(), Some("R9"));
        let v = decide(&k7, linf(4), linf_inf());
        assert_eq!(v.status, Status::NotFlattenable);
        assert_eq!(v.rule.as_deref(), Some("R10"));
    }

    #[test]
    fn linf_plane_positive() {
        let k4 = Graph::complete(4);
        let v = decide(&k4, linf(2), linf_inf());
        assert_eq!(v.status, Status::Flattenable);
        assert_eq!(v.rule.as_deref(), Some("R5"));
        // the isometric copy l1^2 gets the same answer
        let v1 = decide(&k4, SpaceDescriptor::finite(1.0, 2), linf_inf());
        assert_eq!(v1.status, Status::Flattenable);
        assert_eq!(v1.rule.as_deref(), Some("R5"));
    }

    #[test]
    fn undecided_pairs_stay_unknown() {
        let k4 = Graph::complete(4);
        // forbidden minors unknown for (l2^d, l2) with d >= 4
        let v = decide(&k4, l2(4), l2_inf());
        assert_eq!(v.status, Status::Unknown);
        assert!(v.rule.is_none());
        // finite-dimensional targets from the linf plane are not covered
        let k5 = Graph::complete(5);
        let v = decide(&k5, linf(2), linf(3));
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn propagation_examples() {
        // K4 flattens from linf^2 into linf, hence into any target space
        let k4 = Graph::complete(4);
        let v = decide(&k4, linf(2), SpaceDescriptor::finite(3.0, 3));
        assert_eq!(v.status, Status::Flattenable);
        assert_eq!(v.rule.as_deref(), Some("R11"));

        // K5 is not (l2^3, l2)-flattenable, hence not into l1.5 either
        let k5 = Graph::complete(5);
        let v = decide(&k5, l2(3), SpaceDescriptor::new(Exponent::finite(1.5), Dim::Infinite));
        assert_eq!(v.status, Status::NotFlattenable);
        assert_eq!(v.rule.as_deref(), Some("R11"));
    }

    #[test]
    fn kn_dim_table_examples() {
        assert_eq!(kn_dim_table(7, Exponent::Infinity), (5, Some(5)));
        assert_eq!(kn_dim_table(5, Exponent::finite(1.0)), (10, Some(3)));
        assert_eq!(kn_dim_table(2, Exponent::finite(2.0)), (1, None));
        assert_eq!(kn_dim_table(4, Exponent::finite(1.5)), (6, Some(3)));
        assert_eq!(kn_dim_table(3, Exponent::Infinity), (2, Some(2)));
    }

    #[test]
    fn explain_mentions_rule_and_witness() {
        let w4 = Graph::w4();
        let v = decide(&w4, linf(2), l2_inf());
        let text = explain(&v);
        assert!(text.contains("R5"));
        assert!(text.contains("W4"));
        assert!(text.contains("not flattenable"));

        let v = decide(&Graph::complete(4), l2(4), l2_inf());
        let text = explain(&v);
        assert!(text.contains("unknown"));
        assert!(text.contains("R4"));
    }
}
