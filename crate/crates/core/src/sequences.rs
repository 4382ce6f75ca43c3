//! Deduction over long exact sequences of finitely generated abelian
//! groups, the homology computations for the knot threefold built on them,
//! and Wall's classification data for simply connected spin 6-manifolds.
//!
//! The solver only deduces. Each step cites one rule and the nodes it read,
//! and anything it cannot pin down is reported as underdetermined.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::homology::FgAbGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeSpec {
    Known(FgAbGroup),
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowTag {
    #[default]
    None,
    Zero,
    Injective,
    /// Injective with torsion-free cokernel.
    SplitInjective,
    Surjective,
    Isomorphism,
}

/// Map between consecutive nodes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Arrow {
    #[serde(default)]
    pub tag: ArrowTag,
    /// Rank of the image.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// The kernel contains a direct summand of the (free) source of this rank.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_summand: Option<usize>,
    /// Name of the fact justifying the annotation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fact: Option<String>,
}

impl Arrow {
    pub fn tagged(tag: ArrowTag) -> Self {
        Arrow { tag, ..Arrow::default() }
    }

    pub fn by_fact(tag: ArrowTag, fact: &str) -> Self {
        Arrow { tag, fact: Some(fact.into()), ..Arrow::default() }
    }
}

/// A named input taken on trust, with where it comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub source: String,
    /// Two nodes of equal rank.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_equal: Option<(usize, usize)>,
    /// A node whose group is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known: Option<(usize, FgAbGroup)>,
}

impl Fact {
    pub fn note(name: &str, source: &str) -> Self {
        Fact { name: name.into(), source: source.into(), rank_equal: None, known: None }
    }
}

/// Exact sequence `nodes[0] → nodes[1] → …`, exact at every interior node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceProblem {
    pub nodes: Vec<NodeSpec>,
    /// `arrows[i]` goes from `nodes[i]` to `nodes[i + 1]`.
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub facts: Vec<Fact>,
    /// Optional display names, one per node.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("contradiction from rule {rule} at {place}: had {had}, derived {derived}")]
    Contradiction { rule: String, place: String, had: String, derived: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deduction {
    pub rule: String,
    pub inputs: Vec<usize>,
    pub conclusion: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct NodeState {
    rank: Option<usize>,
    torsion_free: bool,
    group: Option<FgAbGroup>,
    gens_upper: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct ArrowState {
    image_rank: Option<usize>,
    zero: bool,
    injective: bool,
    surjective: bool,
    coker_free: bool,
    kernel_summand: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolveOutcome {
    Solved { groups: Vec<FgAbGroup>, image_ranks: Vec<usize>, log: Vec<Deduction> },
    Underdetermined { partial: Vec<Option<FgAbGroup>>, residual: Vec<String>, log: Vec<Deduction> },
}

impl SolveOutcome {
    pub fn groups(&self) -> Option<&[FgAbGroup]> {
        match self {
            SolveOutcome::Solved { groups, .. } => Some(groups),
            SolveOutcome::Underdetermined { .. } => None,
        }
    }

    pub fn log(&self) -> &[Deduction] {
        match self {
            SolveOutcome::Solved { log, .. } | SolveOutcome::Underdetermined { log, .. } => log,
        }
    }
}

struct Solver<'a> {
    p: &'a SequenceProblem,
    nodes: Vec<NodeState>,
    arrows: Vec<ArrowState>,
    log: Vec<Deduction>,
    changed: bool,
}

impl Solver<'_> {
    fn name(&self, i: usize) -> String {
        match (self.p.labels.get(i), &self.p.nodes[i]) {
            (Some(l), _) => l.clone(),
            (None, NodeSpec::Unknown(n)) => n.clone(),
            (None, NodeSpec::Known(_)) => format!("node{i}"),
        }
    }

    fn record(&mut self, rule: &str, inputs: &[usize], conclusion: String) {
        self.changed = true;
        self.log.push(Deduction { rule: rule.into(), inputs: inputs.to_vec(), conclusion });
    }

    fn set_rank(&mut self, i: usize, r: usize, rule: &str, inputs: &[usize]) -> Result<(), SequenceError> {
        match self.nodes[i].rank {
            Some(x) if x == r => Ok(()),
            Some(x) => Err(SequenceError::Contradiction { rule: rule.into(), place: self.name(i), had: format!("rank {x}"), derived: format!("rank {r}") }),
            None => {
                self.nodes[i].rank = Some(r);
                self.record(rule, inputs, format!("rank {} = {r}", self.name(i)));
                Ok(())
            }
        }
    }

    fn set_group(&mut self, i: usize, g: FgAbGroup, rule: &str, inputs: &[usize]) -> Result<(), SequenceError> {
        if let Some(h) = &self.nodes[i].group {
            if *h != g {
                return Err(SequenceError::Contradiction { rule: rule.into(), place: self.name(i), had: h.to_string(), derived: g.to_string() });
            }
            return Ok(());
        }
        if let Some(r) = self.nodes[i].rank {
            if r != g.rank {
                return Err(SequenceError::Contradiction { rule: rule.into(), place: self.name(i), had: format!("rank {r}"), derived: g.to_string() });
            }
        }
        if self.nodes[i].torsion_free && !g.is_free() {
            return Err(SequenceError::Contradiction { rule: rule.into(), place: self.name(i), had: "torsion-free".into(), derived: g.to_string() });
        }
        self.record(rule, inputs, format!("{} = {g}", self.name(i)));
        let n = &mut self.nodes[i];
        n.rank = Some(g.rank);
        n.torsion_free = g.is_free();
        n.gens_upper = Some(g.min_generators());
        n.group = Some(g);
        Ok(())
    }

    fn set_torsion_free(&mut self, i: usize, rule: &str, inputs: &[usize]) -> Result<(), SequenceError> {
        if self.nodes[i].torsion_free {
            return Ok(());
        }
        if let Some(g) = &self.nodes[i].group {
            if !g.is_free() {
                return Err(SequenceError::Contradiction { rule: rule.into(), place: self.name(i), had: g.to_string(), derived: "torsion-free".into() });
            }
        }
        self.nodes[i].torsion_free = true;
        self.record(rule, inputs, format!("{} is torsion-free", self.name(i)));
        Ok(())
    }

    fn set_gens(&mut self, i: usize, k: usize, rule: &str, inputs: &[usize]) {
        if self.nodes[i].gens_upper.is_none_or(|g| k < g) {
            self.nodes[i].gens_upper = Some(k);
            self.record(rule, inputs, format!("{} is generated by at most {k} elements", self.name(i)));
        }
    }

    fn set_image_rank(&mut self, a: usize, r: usize, rule: &str, inputs: &[usize]) -> Result<(), SequenceError> {
        match self.arrows[a].image_rank {
            Some(x) if x == r => Ok(()),
            Some(x) => Err(SequenceError::Contradiction { rule: rule.into(), place: self.arrow_name(a), had: format!("image rank {x}"), derived: format!("image rank {r}") }),
            None => {
                self.arrows[a].image_rank = Some(r);
                let mut cited = inputs.to_vec();
                cited.extend([a, a + 1]);
                cited.sort_unstable();
                cited.dedup();
                self.record(rule, &cited, format!("image of {} has rank {r}", self.arrow_name(a)));
                Ok(())
            }
        }
    }

    fn arrow_name(&self, a: usize) -> String {
        format!("{} -> {}", self.name(a), self.name(a + 1))
    }

    fn flag(&mut self, a: usize, which: &str, rule: &str, inputs: &[usize]) -> Result<(), SequenceError> {
        let st = &mut self.arrows[a];
        let slot = match which {
            "zero" => &mut st.zero,
            "injective" => &mut st.injective,
            "surjective" => &mut st.surjective,
            "coker_free" => &mut st.coker_free,
            _ => unreachable!("unknown arrow flag"),
        };
        if !*slot {
            *slot = true;
            let what = if which == "coker_free" { "has torsion-free cokernel" } else { which };
            let msg = format!("{} is {what}", self.arrow_name(a));
            self.record(rule, inputs, msg);
        }
        Ok(())
    }

    fn is_zero_group(&self, i: usize) -> bool {
        self.nodes[i].group.as_ref().is_some_and(FgAbGroup::is_trivial)
    }

    fn is_free(&self, i: usize) -> bool {
        self.nodes[i].torsion_free || self.nodes[i].group.as_ref().is_some_and(FgAbGroup::is_free)
    }

    fn step(&mut self) -> Result<(), SequenceError> {
        let n = self.nodes.len();
        let m = self.arrows.len();
        // maps out of or into the zero group
        for a in 0..m {
            if (self.is_zero_group(a) || self.is_zero_group(a + 1)) && !self.arrows[a].zero {
                self.flag(a, "zero", "zero-group", &[a, a + 1])?;
            }
        }
        for a in 0..m {
            let st = self.arrows[a].clone();
            // exactness turns a zero map into injectivity or surjectivity of its neighbours
            if st.zero {
                if a + 1 < m && !self.arrows[a + 1].injective {
                    self.flag(a + 1, "injective", "exact-after-zero", &[a + 1])?;
                }
                if a >= 1 && !self.arrows[a - 1].surjective {
                    self.flag(a - 1, "surjective", "exact-before-zero", &[a])?;
                }
                self.set_image_rank(a, 0, "zero-map", &[a])?;
            }
            if st.injective && a >= 1 && !self.arrows[a - 1].zero {
                self.flag(a - 1, "zero", "exact-before-injective", &[a])?;
            }
            if st.surjective && a + 1 < m && !self.arrows[a + 1].zero {
                self.flag(a + 1, "zero", "exact-after-surjective", &[a + 1])?;
            }
            if st.injective {
                if let Some(r) = self.nodes[a].rank {
                    self.set_image_rank(a, r, "injective-rank", &[a])?;
                }
            }
            if st.surjective {
                if let Some(r) = self.nodes[a + 1].rank {
                    self.set_image_rank(a, r, "surjective-rank", &[a + 1])?;
                }
            }
            // an injective map into the zero group, or a zero surjection
            if st.injective && st.zero {
                self.set_group(a, FgAbGroup::trivial(), "injective-zero-map", &[a])?;
            }
            if st.surjective && st.zero {
                self.set_group(a + 1, FgAbGroup::trivial(), "surjective-zero-map", &[a + 1])?;
            }
            if st.injective && st.surjective {
                if let Some(g) = self.nodes[a].group.clone() {
                    self.set_group(a + 1, g, "isomorphism", &[a])?;
                }
                if let Some(g) = self.nodes[a + 1].group.clone() {
                    self.set_group(a, g, "isomorphism", &[a + 1])?;
                }
                if self.nodes[a].torsion_free {
                    self.set_torsion_free(a + 1, "isomorphism", &[a])?;
                }
                if self.nodes[a + 1].torsion_free {
                    self.set_torsion_free(a, "isomorphism", &[a + 1])?;
                }
            }
            // a kernel of rank 0 in a free group is trivial
            if !st.injective && self.is_free(a) && self.nodes[a].rank.is_some() && st.image_rank == self.nodes[a].rank {
                self.flag(a, "injective", "free-full-rank", &[a])?;
            }
            // a surjection between free groups of equal rank is an isomorphism
            if st.surjective && !st.injective && self.is_free(a) && self.is_free(a + 1) && self.nodes[a].rank.is_some() && self.nodes[a].rank == self.nodes[a + 1].rank {
                self.flag(a, "injective", "free-surjection-equal-rank", &[a, a + 1])?;
            }
            // an image of rank 0 inside a torsion-free group vanishes
            if !st.zero && st.image_rank == Some(0) && self.is_free(a + 1) {
                self.flag(a, "zero", "rank-zero-image", &[a + 1])?;
            }
            if st.surjective {
                if let Some(g) = self.nodes[a].gens_upper.or(self.nodes[a].group.as_ref().map(FgAbGroup::min_generators)) {
                    let k = if st.kernel_summand > 0 && self.is_free(a) { g.saturating_sub(st.kernel_summand) } else { g };
                    let rule = if k < g { "surjection-kills-summand" } else { "surjection-generators" };
                    self.set_gens(a + 1, k, rule, &[a]);
                }
            }
        }
        for i in 0..n {
            // exactness window: rank B = rank im(in) + rank im(out)
            if i >= 1 && i < m {
                let (l, r, b) = (self.arrows[i - 1].image_rank, self.arrows[i].image_rank, self.nodes[i].rank);
                match (l, r, b) {
                    (Some(x), Some(y), None) => self.set_rank(i, x + y, "exactness-window", &[i])?,
                    (Some(x), None, Some(z)) => self.set_image_rank(i, z.checked_sub(x).ok_or_else(|| self.window_error(i))?, "exactness-window", &[i])?,
                    (None, Some(y), Some(z)) => self.set_image_rank(i - 1, z.checked_sub(y).ok_or_else(|| self.window_error(i))?, "exactness-window", &[i])?,
                    (Some(x), Some(y), Some(z)) if x + y != z => return Err(self.window_error(i)),
                    _ => {}
                }
                // torsion: 0 → im(in) → B → im(out) → 0 splits when the target is free
                let inn = &self.arrows[i - 1];
                let im_in_free = inn.zero || (inn.injective && self.is_free(i - 1)) || (i >= 2 && self.arrows[i - 2].coker_free && self.is_free(i - 1));
                if !self.nodes[i].torsion_free && im_in_free && self.is_free(i + 1) {
                    self.set_torsion_free(i, "torsion-sandwich", &[i - 1, i + 1])?;
                }
            }
            if self.nodes[i].group.is_none() && self.nodes[i].torsion_free {
                if let Some(r) = self.nodes[i].rank {
                    self.set_group(i, FgAbGroup::free(r), "free-of-known-rank", &[i])?;
                }
            }
            if let (None, Some(r), Some(g)) = (&self.nodes[i].group, self.nodes[i].rank, self.nodes[i].gens_upper) {
                if g < r {
                    return Err(SequenceError::Contradiction { rule: "generator-bound".into(), place: self.name(i), had: format!("at most {g} generators"), derived: format!("rank {r}") });
                }
                if g == r {
                    self.set_torsion_free(i, "generators-equal-rank", &[i])?;
                }
            }
        }
        // bounds: an image has rank at most that of either end
        for a in 0..m {
            if let Some(x) = self.arrows[a].image_rank {
                for end in [a, a + 1] {
                    if self.nodes[end].rank.is_some_and(|r| x > r) {
                        return Err(SequenceError::Contradiction { rule: "image-bound".into(), place: self.arrow_name(a), had: format!("rank {}", self.name(end)), derived: format!("image rank {x}") });
                    }
                }
            }
        }
        self.alternating_sums()?;
        for f in &self.p.facts {
            if let Some((i, j)) = f.rank_equal {
                let rule = format!("fact:{}", f.name);
                match (self.nodes[i].rank, self.nodes[j].rank) {
                    (Some(x), None) => self.set_rank(j, x, &rule, &[i])?,
                    (None, Some(y)) => self.set_rank(i, y, &rule, &[j])?,
                    (Some(x), Some(y)) if x != y => {
                        return Err(SequenceError::Contradiction { rule, place: format!("{} vs {}", self.name(i), self.name(j)), had: x.to_string(), derived: y.to_string() })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn window_error(&self, i: usize) -> SequenceError {
        SequenceError::Contradiction {
            rule: "exactness-window".into(),
            place: self.name(i),
            had: format!("{:?}", self.nodes[i].rank),
            derived: format!("image ranks {:?} + {:?}", self.arrows[i - 1].image_rank, self.arrows[i].image_rank),
        }
    }

    /// Between two maps of rank 0 the alternating sum of ranks vanishes.
    fn alternating_sums(&mut self) -> Result<(), SequenceError> {
        let m = self.arrows.len();
        let zeros: Vec<usize> = (0..m).filter(|&a| self.arrows[a].image_rank == Some(0)).collect();
        for w in zeros.windows(2) {
            let (p, q) = (w[0] + 1, w[1]);
            if p > q {
                continue;
            }
            let unknown: Vec<usize> = (p..=q).filter(|&j| self.nodes[j].rank.is_none()).collect();
            let sum: i64 = (p..=q).filter_map(|j| self.nodes[j].rank.map(|r| if (j - p) % 2 == 0 { r as i64 } else { -(r as i64) })).sum();
            let inputs: Vec<usize> = (p..=q).collect();
            match unknown.as_slice() {
                [] if sum != 0 => {
                    return Err(SequenceError::Contradiction { rule: "alternating-sum".into(), place: format!("{}..{}", self.name(p), self.name(q)), had: format!("sum {sum}"), derived: "0".into() })
                }
                [j] => {
                    let v = if (j - p) % 2 == 0 { -sum } else { sum };
                    let r = usize::try_from(v).map_err(|_| SequenceError::Contradiction { rule: "alternating-sum".into(), place: self.name(*j), had: "nonnegative rank".into(), derived: v.to_string() })?;
                    self.set_rank(*j, r, "alternating-sum", &inputs)?;
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Run all deduction rules to a fixed point.
pub fn solve(p: &SequenceProblem) -> Result<SolveOutcome, SequenceError> {
    if p.nodes.len() < 2 || p.arrows.len() + 1 != p.nodes.len() {
        return Err(SequenceError::Malformed(format!("{} nodes need {} arrows, got {}", p.nodes.len(), p.nodes.len().saturating_sub(1), p.arrows.len())));
    }
    if !p.labels.is_empty() && p.labels.len() != p.nodes.len() {
        return Err(SequenceError::Malformed("one label per node".into()));
    }
    for f in &p.facts {
        let bad = f.rank_equal.is_some_and(|(i, j)| i >= p.nodes.len() || j >= p.nodes.len()) || f.known.as_ref().is_some_and(|(i, _)| *i >= p.nodes.len());
        if bad {
            return Err(SequenceError::Malformed(format!("fact {} refers to a missing node", f.name)));
        }
    }
    for a in &p.arrows {
        if let Some(name) = &a.fact {
            if !p.facts.iter().any(|f| &f.name == name) {
                return Err(SequenceError::Malformed(format!("arrow cites undeclared fact {name}")));
            }
        }
    }
    let mut s = Solver { p, nodes: vec![NodeState::default(); p.nodes.len()], arrows: vec![ArrowState::default(); p.arrows.len()], log: Vec::new(), changed: false };
    for (i, node) in p.nodes.iter().enumerate() {
        if let NodeSpec::Known(g) = node {
            s.set_group(i, g.clone(), "given", &[])?;
        }
    }
    for f in &p.facts {
        if let Some((i, g)) = &f.known {
            s.set_group(*i, g.clone(), &format!("fact:{}", f.name), &[])?;
        }
    }
    for (a, arrow) in p.arrows.iter().enumerate() {
        let rule = arrow.fact.as_ref().map_or_else(|| "given".to_string(), |f| format!("fact:{f}"));
        match arrow.tag {
            ArrowTag::None => {}
            ArrowTag::Zero => s.flag(a, "zero", &rule, &[])?,
            ArrowTag::Injective => s.flag(a, "injective", &rule, &[])?,
            ArrowTag::SplitInjective => {
                s.flag(a, "injective", &rule, &[])?;
                s.flag(a, "coker_free", &rule, &[])?;
            }
            ArrowTag::Surjective => s.flag(a, "surjective", &rule, &[])?,
            ArrowTag::Isomorphism => {
                s.flag(a, "injective", &rule, &[])?;
                s.flag(a, "surjective", &rule, &[])?;
            }
        }
        if let Some(r) = arrow.rank {
            s.set_image_rank(a, r, &rule, &[])?;
        }
        if let Some(k) = arrow.kernel_summand {
            s.arrows[a].kernel_summand = k;
            s.record(&rule, &[a], format!("kernel of {} contains a rank-{k} summand", s.arrow_name(a)));
        }
    }
    loop {
        s.changed = false;
        s.step()?;
        if !s.changed {
            break;
        }
    }
    let complete = s.nodes.iter().all(|n| n.group.is_some()) && s.arrows.iter().all(|a| a.image_rank.is_some());
    if complete {
        let groups: Vec<FgAbGroup> = s.nodes.iter().map(|n| n.group.clone().unwrap()).collect();
        let image_ranks: Vec<usize> = s.arrows.iter().map(|a| a.image_rank.unwrap()).collect();
        verify_ranks(&groups, &image_ranks)?;
        Ok(SolveOutcome::Solved { groups, image_ranks, log: s.log })
    } else {
        let mut residual = Vec::new();
        for i in 0..s.nodes.len() {
            if s.nodes[i].group.is_none() {
                let r = s.nodes[i].rank.map_or("unknown rank".to_string(), |r| format!("rank {r}"));
                let t = if s.nodes[i].torsion_free { "torsion-free" } else { "torsion unknown" };
                residual.push(format!("{}: {r}, {t}", s.name(i)));
            }
        }
        for a in 0..s.arrows.len() {
            if s.arrows[a].image_rank.is_none() {
                residual.push(format!("{}: image rank unknown", s.arrow_name(a)));
            }
        }
        Ok(SolveOutcome::Underdetermined { partial: s.nodes.iter().map(|n| n.group.clone()).collect(), residual, log: s.log })
    }
}

/// Exactness over Q: every interior rank splits as incoming plus outgoing
/// image rank, and no image is larger than either end.
pub fn verify_ranks(groups: &[FgAbGroup], image_ranks: &[usize]) -> Result<(), SequenceError> {
    for (a, &x) in image_ranks.iter().enumerate() {
        if x > groups[a].rank || x > groups[a + 1].rank {
            return Err(SequenceError::Contradiction { rule: "verify".into(), place: format!("arrow {a}"), had: format!("image rank {x}"), derived: "bounded by the ends".into() });
        }
    }
    for i in 1..groups.len() - 1 {
        if groups[i].rank != image_ranks[i - 1] + image_ranks[i] {
            return Err(SequenceError::Contradiction { rule: "verify".into(), place: format!("node {i}"), had: groups[i].to_string(), derived: format!("{} + {}", image_ranks[i - 1], image_ranks[i]) });
        }
    }
    Ok(())
}

fn parse(s: &str) -> FgAbGroup {
    s.parse().expect("valid group literal")
}

/// Interleave the long exact sequence of a pair `(X, A)` from degree `top`
/// down to 0: `H_k(A) → H_k(X) → H_k(X, A) → H_{k−1}(A) → …`, closed by zeros.
/// Returns the problem and the node index of `H_k(X)` for each `k`.
pub fn pair_sequence(top: usize, sub: &[FgAbGroup], rel: &[FgAbGroup], unknown_prefix: &str) -> (SequenceProblem, Vec<usize>) {
    let get = |v: &[FgAbGroup], k: usize| v.get(k).cloned().unwrap_or_else(FgAbGroup::trivial);
    let mut nodes = vec![NodeSpec::Known(FgAbGroup::trivial())];
    let mut labels = vec!["0".to_string()];
    let mut x_index = vec![0; top + 1];
    for k in (0..=top).rev() {
        nodes.push(NodeSpec::Known(get(sub, k)));
        labels.push(format!("H{k}(A)"));
        x_index[k] = nodes.len();
        nodes.push(NodeSpec::Unknown(format!("{unknown_prefix}{k}")));
        labels.push(format!("H{k}(X)"));
        nodes.push(NodeSpec::Known(get(rel, k)));
        labels.push(format!("H{k}(X,A)"));
    }
    nodes.push(NodeSpec::Known(FgAbGroup::trivial()));
    labels.push("0".into());
    let arrows = vec![Arrow::default(); nodes.len() - 1];
    (SequenceProblem { nodes, arrows, facts: Vec::new(), labels }, x_index)
}

/// Homology of the exceptional divisor `E = CP¹ × C` (sphere times elliptic curve).
pub fn exceptional_divisor_homology() -> Vec<FgAbGroup> {
    ["Z", "Z^2", "Z^2", "Z^2", "Z"].iter().map(|s| parse(s)).collect()
}

/// `H_j(P/Z_m, C)`, from the pair sequence of the orbifold (with the
/// homology of S³×S³) and its singular elliptic curve `C`.
pub fn orbifold_relative_homology() -> Result<Vec<FgAbGroup>, SequenceError> {
    let orbifold = orbifold_homology_mv()?;
    let torus: Vec<FgAbGroup> = ["Z", "Z^2", "Z"].iter().map(|s| parse(s)).collect();
    // pair (P, C) in the order H_k(C) → H_k(P) → H_k(P, C): relative groups unknown
    let mut nodes = vec![NodeSpec::Known(FgAbGroup::trivial())];
    let mut labels = vec!["0".to_string()];
    let mut rel_index = [0; 7];
    for k in (0..=6).rev() {
        nodes.push(NodeSpec::Known(torus.get(k).cloned().unwrap_or_else(FgAbGroup::trivial)));
        labels.push(format!("H{k}(C)"));
        nodes.push(NodeSpec::Known(orbifold[k].clone()));
        labels.push(format!("H{k}(P)"));
        rel_index[k] = nodes.len();
        nodes.push(NodeSpec::Unknown(format!("H{k}(P,C)")));
        labels.push(format!("H{k}(P,C)"));
    }
    nodes.push(NodeSpec::Known(FgAbGroup::trivial()));
    labels.push("0".into());
    let mut arrows = vec![Arrow::default(); nodes.len() - 1];
    // points and components: H_0(C) → H_0(P) is an isomorphism
    let h0c = rel_index[0] - 2;
    arrows[h0c] = Arrow::by_fact(ArrowTag::Isomorphism, "connected");
    let facts = vec![Fact::note("connected", "C and P/Z_m are connected")];
    let p = SequenceProblem { nodes, arrows, facts, labels };
    match solve(&p)? {
        SolveOutcome::Solved { groups, .. } => Ok(rel_index.iter().map(|&i| groups[i].clone()).collect()),
        SolveOutcome::Underdetermined { residual, .. } => Err(SequenceError::Malformed(format!("relative homology underdetermined: {}", residual.join("; ")))),
    }
}

/// Problem whose solution is `H_*(X)` for the resolution `X` of `P/Z_2`.
pub fn knot_threefold_problem() -> SequenceProblem {
    let rel: Vec<FgAbGroup> = ["0", "0", "Z^2", "Z^3", "0", "0", "Z"].iter().map(|s| parse(s)).collect();
    let (mut p, x) = pair_sequence(6, &exceptional_divisor_homology(), &rel, "H");
    p.facts = vec![
        Fact { name: "simply-connected".into(), source: "X is simply connected (fundamental group argument)".into(), rank_equal: None, known: Some((x[1], FgAbGroup::trivial())) },
        Fact { name: "poincare-duality".into(), source: "X is a closed oriented 6-manifold".into(), rank_equal: Some((x[2], x[4])), known: None },
        Fact::note("boundary-iso", "H_2(X,E) -> H_1(E) is an isomorphism"),
        Fact::note("fibre-null", "the elliptic fibre of E is null-homologous in X"),
    ];
    // H_2(X, E) → H_1(E) and H_2(E) → H_2(X)
    p.arrows[x[2] + 1] = Arrow::by_fact(ArrowTag::Isomorphism, "boundary-iso");
    p.arrows[x[2] - 1] = Arrow { kernel_summand: Some(1), fact: Some("fibre-null".into()), ..Arrow::default() };
    p
}

/// `H_0..H_6` of the knot threefold for `m = 2`.
pub fn knot_threefold_homology(m: u32) -> Result<Vec<FgAbGroup>, SequenceError> {
    if m != 2 {
        return Err(SequenceError::Malformed(format!("only m = 2 is modeled, got m = {m}")));
    }
    let p = knot_threefold_problem();
    let x: Vec<usize> = (0..=6).map(|k| 2 + 3 * (6 - k)).collect();
    match solve(&p)? {
        SolveOutcome::Solved { groups, .. } => Ok(x.iter().map(|&i| groups[i].clone()).collect()),
        SolveOutcome::Underdetermined { residual, .. } => Err(SequenceError::Malformed(format!("underdetermined: {}", residual.join("; ")))),
    }
}

/// Mayer–Vietoris problem `… → H_k(U∩V) → H_k(U) ⊕ H_k(V) → H_k(X) → H_{k−1}(U∩V) → …`
/// from degree `top` down, with per-degree tags on the first map.
pub fn mayer_vietoris(top: usize, inter: &[FgAbGroup], sum: &[FgAbGroup], tags: &[Arrow], facts: Vec<Fact>) -> (SequenceProblem, Vec<usize>) {
    let get = |v: &[FgAbGroup], k: usize| v.get(k).cloned().unwrap_or_else(FgAbGroup::trivial);
    let mut nodes = vec![NodeSpec::Known(FgAbGroup::trivial())];
    let mut labels = vec!["0".to_string()];
    let mut arrows = vec![Arrow::default()];
    let mut x_index = vec![0; top + 1];
    for k in (0..=top).rev() {
        nodes.push(NodeSpec::Known(get(inter, k)));
        labels.push(format!("H{k}(U∩V)"));
        arrows.push(tags.get(k).cloned().unwrap_or_default());
        nodes.push(NodeSpec::Known(get(sum, k)));
        labels.push(format!("H{k}(U)+H{k}(V)"));
        arrows.push(Arrow::default());
        x_index[k] = nodes.len();
        nodes.push(NodeSpec::Unknown(format!("H{k}")));
        labels.push(format!("H{k}(X)"));
        arrows.push(Arrow::default());
    }
    nodes.push(NodeSpec::Known(FgAbGroup::trivial()));
    labels.push("0".into());
    (SequenceProblem { nodes, arrows, facts, labels }, x_index)
}

fn solved_at(p: &SequenceProblem, idx: &[usize]) -> Result<Vec<FgAbGroup>, SequenceError> {
    match solve(p)? {
        SolveOutcome::Solved { groups, .. } => Ok(idx.iter().map(|&i| groups[i].clone()).collect()),
        SolveOutcome::Underdetermined { residual, .. } => Err(SequenceError::Malformed(format!("underdetermined: {}", residual.join("; ")))),
    }
}

/// Mayer–Vietoris for `P/Z_m = X₁ ∪ X₂` with `X₁ ≃ X₂ ≃ S¹ × S³` and
/// `X₁ ∩ X₂ ≃ T² × S³`.
pub fn orbifold_mv_problem() -> (SequenceProblem, Vec<usize>) {
    let g = |v: &[&str]| v.iter().map(|s| parse(s)).collect::<Vec<_>>();
    let inter = g(&["Z", "Z^2", "Z", "Z", "Z^2", "Z"]);
    let sum = g(&["Z^2", "Z^2", "0", "Z^2", "Z^2"]);
    let (f_prod, f_retract) = ("product", "retract");
    let mut tags = vec![Arrow::default(); 7];
    // fibre and point classes go diagonally; meridian and longitude split between the pieces
    tags[0] = Arrow::by_fact(ArrowTag::SplitInjective, f_prod);
    tags[1] = Arrow::by_fact(ArrowTag::Isomorphism, f_retract);
    tags[3] = Arrow::by_fact(ArrowTag::SplitInjective, f_prod);
    tags[4] = Arrow::by_fact(ArrowTag::Isomorphism, f_retract);
    let facts = vec![
        Fact::note(f_prod, "X_1 is a trivial S^3-fibration over the knot complement, with H_1 = Z"),
        Fact::note(f_retract, "X_2 retracts to the preimage of the knot"),
    ];
    mayer_vietoris(6, &inter, &sum, &tags, facts)
}

pub fn orbifold_homology_mv() -> Result<Vec<FgAbGroup>, SequenceError> {
    let (p, idx) = orbifold_mv_problem();
    solved_at(&p, &idx)
}

/// Two 3-balls glued along S².
pub fn sphere_from_balls() -> Result<Vec<FgAbGroup>, SequenceError> {
    let inter = vec![parse("Z"), parse("0"), parse("Z")];
    let sum = vec![parse("Z^2")];
    let mut tags = vec![Arrow::default(); 4];
    tags[0] = Arrow::tagged(ArrowTag::SplitInjective);
    let (p, idx) = mayer_vietoris(3, &inter, &sum, &tags, Vec::new());
    solved_at(&p, &idx)
}

/// Groups of the total space of a bundle whose cohomology is free over the
/// base on `{1, u}` with `u` in `generator_degree`.
pub fn leray_hirsch_module(base: &[FgAbGroup], generator_degree: usize) -> Vec<FgAbGroup> {
    let len = base.len() + generator_degree;
    (0..len)
        .map(|k| {
            let a = base.get(k).cloned().unwrap_or_else(FgAbGroup::trivial);
            match k.checked_sub(generator_degree).and_then(|j| base.get(j)) {
                Some(b) => a.direct_sum(b),
                None => a,
            }
        })
        .collect()
}

/// Invariants of a simply connected 6-manifold in Wall's classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallData {
    pub b3: usize,
    pub h2: FgAbGroup,
    /// `cubic_form[i][j][k] = ⟨x_i x_j x_k, [X]⟩`.
    pub cubic_form: Vec<Vec<Vec<i64>>>,
    /// `⟨p₁ x_i, [X]⟩`.
    pub p1_pairing: Vec<i64>,
    pub spin: bool,
    pub torsion_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum WallMatch {
    Model { a: usize, b: usize, name: String },
    NoMatch { reason: String },
    HypothesesNotMet { reason: String },
}

impl fmt::Display for WallMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallMatch::Model { name, .. } => write!(f, "{name}"),
            WallMatch::NoMatch { reason } => write!(f, "no match ({reason})"),
            WallMatch::HypothesesNotMet { reason } => write!(f, "hypotheses not met ({reason})"),
        }
    }
}

/// Name of `a(S³×S³) # b(S²×S⁴)`, e.g. `2(S³×S³) # (S²×S⁴)`.
pub fn connected_sum_name(a: usize, b: usize) -> String {
    let term = |k: usize, s: &str| match k {
        0 => None,
        1 => Some(format!("({s})")),
        k => Some(format!("{k}({s})")),
    };
    let parts: Vec<String> = [term(a, "S³×S³"), term(b, "S²×S⁴")].into_iter().flatten().collect();
    match parts.as_slice() {
        [] => "S⁶".into(),
        [one] if one.starts_with('(') => one[1..one.len() - 1].to_string(),
        _ => parts.join(" # "),
    }
}

/// Wall data of `a(S³×S³) # b(S²×S⁴)`: everything but `b3` and `H²` vanishes.
pub fn connected_sum_data(a: usize, b: usize) -> WallData {
    WallData { b3: 2 * a, h2: FgAbGroup::free(b), cubic_form: vec![vec![vec![0; b]; b]; b], p1_pairing: vec![0; b], spin: true, torsion_free: true }
}

pub fn wall_match(d: &WallData) -> WallMatch {
    if !d.spin || !d.torsion_free || !d.h2.is_free() {
        return WallMatch::HypothesesNotMet { reason: "needs spin and torsion-free homology".into() };
    }
    let r = d.h2.rank;
    let cubic_ok = d.cubic_form.len() == r && d.cubic_form.iter().all(|m| m.len() == r && m.iter().all(|v| v.len() == r));
    if !cubic_ok || d.p1_pairing.len() != r {
        return WallMatch::HypothesesNotMet { reason: format!("forms do not have arity matching rank H2 = {r}") };
    }
    if !d.b3.is_multiple_of(2) {
        return WallMatch::NoMatch { reason: format!("b3 = {} is odd", d.b3) };
    }
    let model = connected_sum_data(d.b3 / 2, r);
    if d.cubic_form != model.cubic_form {
        return WallMatch::NoMatch { reason: "cubic form on H2 is nonzero".into() };
    }
    if d.p1_pairing != model.p1_pairing {
        return WallMatch::NoMatch { reason: format!("p1 pairing {:?} is nonzero", d.p1_pairing) };
    }
    WallMatch::Model { a: d.b3 / 2, b: r, name: connected_sum_name(d.b3 / 2, r) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn kernel_of_isomorphism() {
        // 0 → A → Z → Z → 0 with Z → Z an isomorphism
        let p = SequenceProblem {
            nodes: vec![NodeSpec::Known(g("0")), NodeSpec::Unknown("A".into()), NodeSpec::Known(g("Z")), NodeSpec::Known(g("Z")), NodeSpec::Known(g("0"))],
            arrows: vec![Arrow::default(), Arrow::default(), Arrow::tagged(ArrowTag::Isomorphism), Arrow::default()],
            facts: vec![],
            labels: vec![],
        };
        let out = solve(&p).unwrap();
        assert_eq!(out.groups().unwrap()[1], g("0"));
        assert!(out.log().iter().all(|d| !d.rule.is_empty()));
    }

    #[test]
    fn underdetermined_not_guessed() {
        // 0 → A → Z → 0 → …: fine; but 0 → Z → A → Z/2 → 0 has two extensions
        let p = SequenceProblem {
            nodes: vec![NodeSpec::Known(g("0")), NodeSpec::Known(g("Z")), NodeSpec::Unknown("A".into()), NodeSpec::Known(g("Z/2")), NodeSpec::Known(g("0"))],
            arrows: vec![Arrow::default(); 4],
            facts: vec![],
            labels: vec![],
        };
        match solve(&p).unwrap() {
            SolveOutcome::Underdetermined { residual, .. } => assert!(residual.iter().any(|r| r.starts_with("A: rank 1"))),
            other => panic!("expected underdetermined, got {other:?}"),
        }
    }

    #[test]
    fn contradiction_detected() {
        let p = SequenceProblem {
            nodes: vec![NodeSpec::Known(g("0")), NodeSpec::Known(g("Z")), NodeSpec::Known(g("0"))],
            arrows: vec![Arrow::default(); 2],
            facts: vec![],
            labels: vec![],
        };
        assert!(matches!(solve(&p), Err(SequenceError::Contradiction { .. })));
        let bad = SequenceProblem { arrows: vec![Arrow::default()], ..p };
        assert!(matches!(solve(&bad), Err(SequenceError::Malformed(_))));
    }

    #[test]
    fn pair_sequence_facts() {
        let p = knot_threefold_problem();
        let out = solve(&p).unwrap();
        let log = out.log();
        let x5 = 2 + 3;
        assert!(log.iter().any(|d| d.conclusion == "H5(X) = 0" && d.inputs.contains(&x5)));
        assert!(log.iter().any(|d| d.conclusion == "H4(X) = Z"));
    }

    #[test]
    fn knot_threefold() {
        let h = knot_threefold_homology(2).unwrap();
        let want: Vec<FgAbGroup> = ["Z", "0", "Z", "Z^4", "Z", "0", "Z"].iter().map(|s| g(s)).collect();
        assert_eq!(h, want);
        assert!(knot_threefold_homology(3).is_err());
        let chi: i64 = h.iter().enumerate().map(|(k, x)| if k % 2 == 0 { x.rank as i64 } else { -(x.rank as i64) }).sum();
        assert_eq!(chi, 0);
    }

    #[test]
    fn orbifold_and_relative() {
        let s3s3: Vec<FgAbGroup> = ["Z", "0", "0", "Z^2", "0", "0", "Z"].iter().map(|s| g(s)).collect();
        assert_eq!(orbifold_homology_mv().unwrap(), s3s3);
        let rel: Vec<FgAbGroup> = ["0", "0", "Z^2", "Z^3", "0", "0", "Z"].iter().map(|s| g(s)).collect();
        assert_eq!(orbifold_relative_homology().unwrap(), rel);
        assert_eq!(sphere_from_balls().unwrap(), vec![g("Z"), g("0"), g("0"), g("Z")]);
    }

    #[test]
    fn leray_hirsch() {
        assert_eq!(leray_hirsch_module(&[g("Z")], 2), vec![g("Z"), g("0"), g("Z")]);
        let s4 = leray_hirsch_module(&[g("Z"), g("0"), g("0"), g("0"), g("Z")], 2);
        assert_eq!(s4[3], g("0"));
        let davis = leray_hirsch_module(&[g("Z"), g("Z^24"), g("Z^72"), g("Z^24"), g("Z")], 2);
        assert_eq!(davis[3], g("Z^48"));
    }

    #[test]
    fn wall() {
        let d = connected_sum_data(2, 1);
        assert_eq!(wall_match(&d).to_string(), "2(S³×S³) # (S²×S⁴)");
        assert_eq!(connected_sum_name(1, 1), "(S³×S³) # (S²×S⁴)");
        assert_eq!(connected_sum_name(0, 0), "S⁶");
        assert_eq!(wall_match(&connected_sum_data(1, 0)).to_string(), "S³×S³");
        let mut bad = d.clone();
        bad.p1_pairing = vec![2];
        assert!(matches!(wall_match(&bad), WallMatch::NoMatch { .. }));
        bad.spin = false;
        assert!(matches!(wall_match(&bad), WallMatch::HypothesesNotMet { .. }));
    }

    #[test]
    fn json_problem() {
        let text = r#"{"nodes":[{"known":{"rank":0,"torsion":[]}},{"unknown":"A"},{"known":"Z"},{"known":"Z"},{"known":"0"}],
            "arrows":[{"tag":"none"},{},{"tag":"isomorphism","fact":"iso"},{"tag":"zero"}],
            "facts":[{"name":"iso","source":"given"}]}"#;
        let p: SequenceProblem = serde_json::from_str(text).unwrap();
        assert_eq!(solve(&p).unwrap().groups().unwrap()[1], g("0"));
    }
}
