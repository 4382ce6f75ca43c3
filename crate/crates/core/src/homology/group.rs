use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `d_i | d_{i+1}` and every `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        FgAbGroup::new(0, &[order])
    }

    /// Normalize arbitrary cyclic summands to invariant factors. Orders 0
    /// count as free summands and orders 1 are dropped.
    pub fn new(rank: usize, cyclic_orders: &[u64]) -> Self {
        let mut rank = rank;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in cyclic_orders {
            if d == 0 {
                rank += 1;
                continue;
            }
            for (p, e) in factorize(d) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            // largest powers go into the last invariant factors
            for (k, q) in powers.iter().rev().enumerate() {
                torsion[len - 1 - k] *= q;
            }
        }
        FgAbGroup { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, o: &FgAbGroup) -> FgAbGroup {
        let mut t = self.torsion.clone();
        t.extend(&o.torsion);
        FgAbGroup::new(self.rank + o.rank, &t)
    }

    /// Number of cyclic summands in the invariant-factor decomposition,
    /// i.e. the minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&x| x == d).count();
            parts.push(if run == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{run}") });
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse abelian group {0:?}")]
pub struct ParseGroupError(pub String);

/// Accepts `0`, `Z`, `Z^3`, `Z/2`, `(Z/2)^3`, `Z^2 + Z/2 + Z/4` and the `⊕` separator.
impl FromStr for FgAbGroup {
    type Err = ParseGroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGroupError(s.to_string());
        let t = s.trim();
        if t == "0" {
            return Ok(FgAbGroup::trivial());
        }
        let mut rank = 0;
        let mut orders = Vec::new();
        for part in t.split(['+', '⊕']) {
            let p = part.trim();
            if p == "Z" {
                rank += 1;
            } else if let Some(e) = p.strip_prefix("Z^") {
                rank += e.trim().parse::<usize>().map_err(|_| err())?;
            } else if let Some(rest) = p.strip_prefix("(Z/") {
                let (d, e) = rest.split_once(")^").ok_or_else(err)?;
                let d: u64 = d.trim().parse().map_err(|_| err())?;
                let e: usize = e.trim().parse().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                orders.extend(std::iter::repeat_n(d, e));
            } else if let Some(d) = p.strip_prefix("Z/") {
                let d: u64 = d.trim().parse().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                orders.push(d);
            } else {
                return Err(err());
            }
        }
        Ok(FgAbGroup::new(rank, &orders))
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Parts { rank: usize, #[serde(default)] torsion: Vec<u64> },
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Parts { rank, torsion } => Ok(FgAbGroup::new(rank, &torsion)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        assert_eq!(FgAbGroup::new(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(FgAbGroup::new(0, &[4, 6]).torsion, vec![2, 12]);
        assert_eq!(FgAbGroup::new(1, &[1, 0]).rank, 2);
        assert!(FgAbGroup::new(0, &[1, 1]).is_trivial());
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "Z", "Z^24", "Z/2", "Z^2 + Z/2 + Z/12", "Z^72 + (Z/2)^25", "(Z/2)^2 + Z/4"] {
            assert_eq!(s.parse::<FgAbGroup>().unwrap().to_string(), s);
        }
        assert_eq!("Z ⊕ Z".parse::<FgAbGroup>().unwrap(), FgAbGroup::free(2));
        assert!("Q".parse::<FgAbGroup>().is_err());
    }

    #[test]
    fn json_forms() {
        let g: FgAbGroup = serde_json::from_str(r#"{"rank":1,"torsion":[2]}"#).unwrap();
        assert_eq!(g.to_string(), "Z + Z/2");
        let h: FgAbGroup = serde_json::from_str(r#""Z^3""#).unwrap();
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"rank":3,"torsion":[]}"#);
    }
}
