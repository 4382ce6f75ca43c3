use std::collections::HashMap;

use crate::lorentz::{gram_of_diagram, CoxeterDiagram, GramMatrix, LorentzMatrix};

use super::CoxeterError;

/// Finite reflection group enumerated as exact matrices.
///
/// Elements are indexed in shortlex order of their normal-form words; the
/// breadth-first closure produces exactly this order, because each element is
/// first reached as `parent · s` with the earliest parent and smallest `s`.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    diagram: CoxeterDiagram,
    gram: GramMatrix,
    nodes: Vec<usize>,
    generators: Vec<LorentzMatrix>,
    elements: Vec<LorentzMatrix>,
    words: Vec<Vec<u8>>,
    right: Vec<u32>,
    index: HashMap<LorentzMatrix, u32>,
}

/// Enumerate the group of a Coxeter diagram, failing once `order_bound`
/// elements have been exceeded.
pub fn generate_group(d: &CoxeterDiagram, order_bound: usize) -> Result<ReflectionGroup, CoxeterError> {
    let gram = gram_of_diagram(d)?;
    let nodes: Vec<usize> = (0..d.rank()).collect();
    ReflectionGroup::closure(d.clone(), gram, nodes, order_bound)
}

/// Enumerate the subgroup generated by the simple reflections in `nodes`,
/// acting on the full space of `d`.
pub fn generate_parabolic(d: &CoxeterDiagram, nodes: &[usize], order_bound: usize) -> Result<ReflectionGroup, CoxeterError> {
    let gram = gram_of_diagram(d)?;
    ReflectionGroup::closure(d.clone(), gram, nodes.to_vec(), order_bound)
}

impl ReflectionGroup {
    /// Group generated by explicit matrices preserving `gram`, for diagrams
    /// whose cosines lie outside Q(√5) but which have integral models (for
    /// example `[4]` by signed permutations).
    pub fn from_matrices(diagram: CoxeterDiagram, gram: GramMatrix, generators: Vec<LorentzMatrix>, bound: usize) -> Result<Self, CoxeterError> {
        if generators.len() != diagram.rank() || generators.iter().any(|g| !g.preserves(&gram)) {
            return Err(CoxeterError::WrongGroup("generators do not match the diagram and form".into()));
        }
        Self::closure_with(diagram, gram, (0..generators.len()).collect(), generators, bound)
    }

    fn closure(diagram: CoxeterDiagram, gram: GramMatrix, nodes: Vec<usize>, bound: usize) -> Result<Self, CoxeterError> {
        let generators: Vec<LorentzMatrix> = nodes.iter().map(|&i| gram.reflection_matrix(i)).collect();
        Self::closure_with(diagram, gram, nodes, generators, bound)
    }

    fn closure_with(
        diagram: CoxeterDiagram,
        gram: GramMatrix,
        nodes: Vec<usize>,
        generators: Vec<LorentzMatrix>,
        bound: usize,
    ) -> Result<Self, CoxeterError> {
        if bound == 0 {
            return Err(CoxeterError::TooLarge(0));
        }
        let id = LorentzMatrix::identity(gram.dim());
        let mut index = HashMap::new();
        index.insert(id.clone(), 0u32);
        let mut elements = vec![id];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut right = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for (j, s) in generators.iter().enumerate() {
                let p = elements[head].compose(s);
                let k = match index.get(&p) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= bound {
                            return Err(CoxeterError::TooLarge(bound));
                        }
                        let k = elements.len() as u32;
                        let mut w = words[head].clone();
                        w.push(j as u8);
                        words.push(w);
                        index.insert(p.clone(), k);
                        elements.push(p);
                        k
                    }
                };
                right.push(k);
            }
            head += 1;
        }
        Ok(ReflectionGroup { diagram, gram, nodes, generators, elements, words, right, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    /// Simple roots of the ambient diagram used as generators.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn generators(&self) -> &[LorentzMatrix] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn elements(&self) -> &[LorentzMatrix] {
        &self.elements
    }

    pub fn element(&self, g: usize) -> &LorentzMatrix {
        &self.elements[g]
    }

    /// Shortlex normal form of element `g` (generator positions, not node ids).
    pub fn word(&self, g: usize) -> &[u8] {
        &self.words[g]
    }

    pub fn lookup(&self, m: &LorentzMatrix) -> Option<usize> {
        self.index.get(m).map(|&k| k as usize)
    }

    /// `g · s_j`.
    pub fn right_mul_gen(&self, g: usize, j: usize) -> usize {
        self.right[g * self.generators.len() + j] as usize
    }

    /// `a · b`, computed from the multiplication table.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |x, &l| self.right_mul_gen(x, l as usize))
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.words[a].iter().rev().fold(0, |x, &l| self.right_mul_gen(x, l as usize))
    }

    /// Index of the unique element of maximal length, if the group is finite.
    pub fn longest_element(&self) -> usize {
        self.elements.len() - 1
    }

    /// All reflections `g s_i g⁻¹`, ascending.
    pub fn reflections(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.order())
            .flat_map(|g| {
                let inv = self.inverse(g);
                (0..self.num_generators()).map(move |i| (g, i, inv))
            })
            .map(|(g, i, inv)| self.mul(self.right_mul_gen(g, i), inv))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Elements of the standard parabolic subgroup on the given generator
    /// positions: exactly those whose normal form avoids all other letters.
    pub fn parabolic_elements(&self, gens: &[usize]) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.words[g].iter().all(|l| gens.contains(&(*l as usize)))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(generate_group(&CoxeterDiagram::linear(&[5]), 100).unwrap().order(), 10);
        assert_eq!(generate_group(&CoxeterDiagram::linear(&[3, 3]), 100).unwrap().order(), 24);
        assert_eq!(generate_group(&CoxeterDiagram::linear(&[5, 3]), 1000).unwrap().order(), 120);
        assert_eq!(generate_group(&CoxeterDiagram::linear(&[3, 3, 3]), 1000).unwrap().order(), 120);
    }

    #[test]
    fn bound_is_enforced() {
        let err = generate_group(&CoxeterDiagram::linear(&[3, 3]), 23).unwrap_err();
        assert!(err.to_string().contains("possibly infinite"));
        assert!(generate_group(&CoxeterDiagram::linear(&[3, 3]), 24).is_ok());
    }

    #[test]
    fn table_arithmetic_matches_matrices() {
        let g = generate_group(&CoxeterDiagram::linear(&[5, 3]), 1000).unwrap();
        for a in (0..g.order()).step_by(7) {
            for b in (0..g.order()).step_by(11) {
                let m = g.element(a).compose(g.element(b));
                assert_eq!(g.lookup(&m), Some(g.mul(a, b)));
            }
            assert_eq!(g.mul(a, g.inverse(a)), 0);
        }
        let w0 = g.longest_element();
        assert_eq!(g.word(w0).len(), 15);
        assert_eq!(g.mul(w0, w0), 0);
    }

    #[test]
    fn shortlex_order() {
        let g = generate_group(&CoxeterDiagram::linear(&[3, 3]), 100).unwrap();
        for i in 1..g.order() {
            let (a, b) = (g.word(i - 1), g.word(i));
            assert!(a.len() < b.len() || (a.len() == b.len() && a < b));
        }
    }

    #[test]
    fn parabolic_subgroups() {
        let g = generate_group(&CoxeterDiagram::linear(&[5, 3]), 1000).unwrap();
        assert_eq!(g.parabolic_elements(&[0, 1]).len(), 10);
        assert_eq!(g.parabolic_elements(&[1, 2]).len(), 6);
        assert_eq!(g.parabolic_elements(&[0, 2]).len(), 4);
    }
}
