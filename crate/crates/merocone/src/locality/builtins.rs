//! The two worked example structures, truncated to finite closed fragments.

use num::integer::gcd;

use super::FiniteLocalityStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinStructure {
    /// `{1..n}` with the coprimality relation and multiplication, keeping a
    /// product only when it stays `<= n`.
    CoprimeNaturals(u32),
    /// The power set of a finite base with the disjointness relation and
    /// union; union never leaves the carrier, so the product is total on the
    /// relation.
    DisjointPowerset(Vec<String>),
}

pub fn builtin_structure(kind: &BuiltinStructure) -> FiniteLocalityStructure {
    match kind {
        BuiltinStructure::CoprimeNaturals(n) => coprime_naturals(*n),
        BuiltinStructure::DisjointPowerset(base) => disjoint_powerset(base),
    }
}

fn coprime_naturals(n: u32) -> FiniteLocalityStructure {
    assert!(n >= 1, "carrier {{1..n}} needs n >= 1");
    let elements: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut relation = Vec::new();
    let mut product = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if gcd(i, j) == 1 {
                relation.push((i as usize - 1, j as usize - 1));
                if i * j <= n {
                    product.push((i as usize - 1, j as usize - 1, (i * j) as usize - 1));
                }
            }
        }
    }
    FiniteLocalityStructure::new(elements, relation, product, Some(0))
        .expect("coprime fragment is well formed")
}

fn disjoint_powerset(base: &[String]) -> FiniteLocalityStructure {
    let mut names: Vec<String> = base.to_vec();
    names.sort();
    names.dedup();
    let k = names.len();
    assert!(k <= 16, "power set carrier would be too large");
    let label = |mask: usize| {
        let members: Vec<&str> = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| names[b].as_str())
            .collect();
        format!("{{{}}}", members.join(","))
    };
    let elements: Vec<String> = (0..1usize << k).map(label).collect();
    let mut relation = Vec::new();
    let mut product = Vec::new();
    for a in 0..1usize << k {
        for b in 0..1usize << k {
            if a & b == 0 {
                relation.push((a, b));
                product.push((a, b, a | b));
            }
        }
    }
    FiniteLocalityStructure::new(elements, relation, product, Some(0))
        .expect("power set fragment is well formed")
}
