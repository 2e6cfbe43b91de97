//! Benchmark fixtures.

use parmod::poly::{parse_poly, Qq};
use parmod::{Ideal, MonomialOrder, PolyRing};

/// The cyclic-n system in variables `x1 … xn`.
pub fn cyclic(n: usize, order: MonomialOrder) -> Ideal<Qq> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ring = PolyRing::new(&names, order, Qq);
    let mut gens = Vec::new();
    for len in 1..n {
        let terms: Vec<String> = (0..n)
            .map(|start| (0..len).map(|k| names[(start + k) % n].clone()).collect::<Vec<_>>().join("*"))
            .collect();
        gens.push(parse_poly(&ring, &terms.join(" + ")).unwrap());
    }
    gens.push(parse_poly(&ring, &format!("{} - 1", names.join("*"))).unwrap());
    Ideal::new(ring, gens)
}
