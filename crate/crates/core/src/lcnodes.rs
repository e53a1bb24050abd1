//! Lissajous curves `γ_mn(t) = (cos nt, cos mt)`, the Lissajous–Chebyshev node
//! sets `LC_mn`, their index sets `I_mn`, cubature weights and the spectral
//! index set `Γ_mn`.

use std::fmt;
use std::io::{self, Write};

use crate::chebyshev::cgl_point;
use crate::report::fmt_f64;
use crate::{Error, Result};

/// A pair of positive degrees together with the Euclidean split `n = λm + p`,
/// `0 <= p < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreePair {
    m: usize,
    n: usize,
    lambda: usize,
    p: usize,
}

impl DegreePair {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDegree(m));
        }
        if n == 0 {
            return Err(Error::InvalidDegree(n));
        }
        Ok(Self {
            m,
            n,
            lambda: n / m,
            p: n % m,
        })
    }

    /// Same as [`DegreePair::new`] but additionally requires `gcd(m, n) = 1`.
    pub fn coprime(m: usize, n: usize) -> Result<Self> {
        let d = Self::new(m, n)?;
        d.require_coprime()?;
        Ok(d)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn is_coprime(&self) -> bool {
        num_integer::gcd(self.m, self.n) == 1
    }

    pub fn require_coprime(&self) -> Result<()> {
        let gcd = num_integer::gcd(self.m, self.n);
        if gcd == 1 {
            Ok(())
        } else {
            Err(Error::NotCoprime {
                m: self.m,
                n: self.n,
                gcd,
            })
        }
    }

    /// Number of nodes (and of spectral pairs) for a coprime pair.
    pub fn node_count(&self) -> usize {
        (self.m + 1) * (self.n + 1) / 2
    }
}

impl fmt::Display for DegreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeClass {
    Vertex,
    Edge,
    Interior,
}

impl NodeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            NodeClass::Vertex => "vertex",
            NodeClass::Edge => "edge",
            NodeClass::Interior => "interior",
        }
    }

    /// Weight multiplier in units of `1/(2mn)`.
    fn weight_units(&self) -> f64 {
        match self {
            NodeClass::Vertex => 1.0,
            NodeClass::Edge => 2.0,
            NodeClass::Interior => 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub k: usize,
    pub l: usize,
    pub u: f64,
    pub v: f64,
    pub weight: f64,
    pub class: NodeClass,
}

/// The node set `LC_mn` with indices, points `(u_k, v_l)`, weights `λ_kl` and
/// boundary classes. Immutable once built.
#[derive(Debug, Clone)]
pub struct NodeSet {
    degrees: DegreePair,
    entries: Vec<Node>,
}

impl NodeSet {
    pub fn degrees(&self) -> DegreePair {
        self.degrees
    }

    pub fn entries(&self) -> &[Node] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Position of node `(k, l)` in [`NodeSet::entries`].
    pub fn position(&self, k: usize, l: usize) -> Option<usize> {
        let (m, n) = (self.degrees.m, self.degrees.n);
        if k > m || l > n || !(k + l).is_multiple_of(2) {
            return None;
        }
        // Entries are generated row by row in k, and for fixed k the admissible
        // l share the parity of k.
        let before: usize = (0..k).map(|kk| admissible_in_row(kk, n)).sum();
        Some(before + l / 2)
    }

    pub fn get(&self, k: usize, l: usize) -> Option<&Node> {
        self.position(k, l).map(|i| &self.entries[i])
    }

    pub fn weight_sum(&self) -> f64 {
        self.entries.iter().map(|e| e.weight).sum()
    }

    /// Columns `k,l,u,v,weight,class`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "k,l,u,v,weight,class")?;
        for e in &self.entries {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                e.k,
                e.l,
                fmt_f64(e.u),
                fmt_f64(e.v),
                fmt_f64(e.weight),
                e.class.as_str()
            )?;
        }
        Ok(())
    }
}

/// Number of `l in 0..=n` with `l ≡ k (mod 2)`.
fn admissible_in_row(k: usize, n: usize) -> usize {
    if k.is_multiple_of(2) {
        n / 2 + 1
    } else {
        n.div_ceil(2)
    }
}

/// The spectral index set `Γ_mn = {(i, j) : i/m + j/n < 1} ∪ {(0, n)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSet {
    degrees: DegreePair,
    pairs: Vec<(usize, usize)>,
}

impl SpectralSet {
    pub fn degrees(&self) -> DegreePair {
        self.degrees
    }

    /// Pairs ordered by `i`, then `j`; the extra pair `(0, n)` comes last.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Largest `j` with `i/m + j/n < 1`, i.e. `jm < n(m − i)`; `None` when no `j` qualifies.
pub(crate) fn spectral_row_end(i: usize, m: usize, n: usize) -> Option<usize> {
    if i >= m {
        return None;
    }
    Some((n * (m - i) - 1) / m)
}

pub fn lissajous_point(degrees: DegreePair, t: f64) -> (f64, f64) {
    ((degrees.n as f64 * t).cos(), (degrees.m as f64 * t).cos())
}

pub fn index_set(degrees: DegreePair) -> Result<Vec<(usize, usize)>> {
    degrees.require_coprime()?;
    let (m, n) = (degrees.m, degrees.n);
    let mut out = Vec::with_capacity(degrees.node_count());
    for k in 0..=m {
        for l in (k % 2..=n).step_by(2) {
            out.push((k, l));
        }
    }
    Ok(out)
}

pub fn build_nodes(degrees: DegreePair) -> Result<NodeSet> {
    let (m, n) = (degrees.m, degrees.n);
    let unit = 1.0 / (2.0 * m as f64 * n as f64);
    let entries = index_set(degrees)?
        .into_iter()
        .map(|(k, l)| {
            let on_u_edge = k == 0 || k == m;
            let on_v_edge = l == 0 || l == n;
            let class = match (on_u_edge, on_v_edge) {
                (true, true) => NodeClass::Vertex,
                (true, false) | (false, true) => NodeClass::Edge,
                (false, false) => NodeClass::Interior,
            };
            Node {
                k,
                l,
                u: cgl_point(k, m),
                v: cgl_point(l, n),
                weight: class.weight_units() * unit,
                class,
            }
        })
        .collect();
    Ok(NodeSet { degrees, entries })
}

const DEDUP_TOL: f64 = 1e-12;

fn same_point(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() <= DEDUP_TOL && (a.1 - b.1).abs() <= DEDUP_TOL
}

/// Samples `γ_mn(πk/(mn))`, `k = 0..=mn`, and deduplicates them at `1e-12`.
pub fn curve_samples(degrees: DegreePair) -> Vec<(f64, f64)> {
    let (m, n) = (degrees.m, degrees.n);
    let mn = (m * n) as f64;
    let mut pts: Vec<(f64, f64)> = (0..=m * n)
        .map(|k| lissajous_point(degrees, std::f64::consts::PI * k as f64 / mn))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut distinct: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for p in pts {
        if !distinct
            .iter()
            .rev()
            .take_while(|q| p.0 - q.0 <= DEDUP_TOL)
            .any(|&q| same_point(p, q))
        {
            distinct.push(p);
        }
    }
    distinct
}

/// Whether the deduplicated curve samples coincide with the index-generated nodes.
pub fn curve_node_match(degrees: DegreePair) -> Result<bool> {
    let nodes = build_nodes(degrees)?;
    let samples = curve_samples(degrees);
    if samples.len() != nodes.len() {
        return Ok(false);
    }
    let node_pts: Vec<(f64, f64)> = nodes.entries.iter().map(|e| (e.u, e.v)).collect();
    let all_samples_hit = samples
        .iter()
        .all(|&s| node_pts.iter().any(|&q| same_point(s, q)));
    let all_nodes_hit = node_pts
        .iter()
        .all(|&q| samples.iter().any(|&s| same_point(s, q)));
    Ok(all_samples_hit && all_nodes_hit)
}

pub fn spectral_set(degrees: DegreePair) -> Result<SpectralSet> {
    degrees.require_coprime()?;
    let (m, n) = (degrees.m, degrees.n);
    let mut pairs = Vec::with_capacity(degrees.node_count());
    for i in 0..m {
        if let Some(end) = spectral_row_end(i, m, n) {
            pairs.extend((0..=end).map(|j| (i, j)));
        }
    }
    pairs.push((0, n));
    Ok(SpectralSet { degrees, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;
    use std::f64::consts::PI;

    fn coprime_pairs(max: usize) -> impl Iterator<Item = DegreePair> {
        (1..=max).flat_map(move |m| (1..=max).filter_map(move |n| DegreePair::coprime(m, n).ok()))
    }

    #[test]
    fn euclidean_split() {
        let d = DegreePair::new(7, 23).unwrap();
        assert_eq!((d.lambda(), d.p()), (3, 2));
        let d = DegreePair::new(4, 12).unwrap();
        assert_eq!((d.lambda(), d.p()), (3, 0));
        assert!(!d.is_coprime());
        assert_eq!(DegreePair::new(0, 3), Err(Error::InvalidDegree(0)));
        assert_eq!(
            DegreePair::coprime(2, 4),
            Err(Error::NotCoprime { m: 2, n: 4, gcd: 2 })
        );
    }

    #[test]
    fn lissajous_points() {
        let d = DegreePair::new(1, 2).unwrap();
        assert_eq!(lissajous_point(d, 0.0), (1.0, 1.0));
        let (a, b) = lissajous_point(d, PI / 2.0);
        assert!((a + 1.0).abs() < 1e-15 && b.abs() < 1e-15);
        let d = DegreePair::new(7, 23).unwrap();
        let (a, b) = lissajous_point(d, PI / 161.0);
        assert!((a - (23.0 * PI / 161.0).cos()).abs() < 1e-15);
        assert!((b - (7.0 * PI / 161.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn index_sets() {
        let d = DegreePair::new(1, 2).unwrap();
        assert_eq!(index_set(d).unwrap(), vec![(0, 0), (0, 2), (1, 1)]);
        assert_eq!(index_set(DegreePair::new(2, 3).unwrap()).unwrap().len(), 6);
        assert_eq!(
            index_set(DegreePair::new(7, 23).unwrap()).unwrap().len(),
            96
        );
    }

    #[test]
    fn nodes_one_two() {
        let nodes = build_nodes(DegreePair::new(1, 2).unwrap()).unwrap();
        let got: Vec<_> = nodes
            .entries()
            .iter()
            .map(|e| (e.u, e.v, e.weight))
            .collect();
        assert_eq!(got[0], (1.0, 1.0, 0.25));
        assert_eq!(got[1], (1.0, -1.0, 0.25));
        assert_eq!(got[2], (-1.0, 0.0, 0.5));
        assert_eq!(nodes.entries()[2].class, NodeClass::Edge);
    }

    #[test]
    fn interior_weight() {
        let nodes = build_nodes(DegreePair::new(3, 4).unwrap()).unwrap();
        let e = nodes.get(1, 1).unwrap();
        assert_eq!(e.class, NodeClass::Interior);
        assert!((e.weight - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn invariants_for_small_coprime_pairs() {
        for d in coprime_pairs(12) {
            let (m, n) = (d.m(), d.n());
            let idx = index_set(d).unwrap();
            // enumeration oracle straight from the definition
            let brute: Vec<_> = (0..=m)
                .flat_map(|k| (0..=n).map(move |l| (k, l)))
                .filter(|(k, l)| (k + l) % 2 == 0)
                .collect();
            assert_eq!(idx, brute);
            assert_eq!(idx.len(), (m + 1) * (n + 1) / 2);

            let gamma = spectral_set(d).unwrap();
            let brute_gamma: HashSet<_> = (0..=m)
                .flat_map(|i| (0..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| i * n + j * m < m * n)
                .chain(std::iter::once((0, n)))
                .collect();
            let got: HashSet<_> = gamma.pairs().iter().copied().collect();
            assert_eq!(got.len(), gamma.len(), "duplicates in Γ for {d}");
            assert_eq!(got, brute_gamma);
            assert_eq!(gamma.len(), idx.len());

            let nodes = build_nodes(d).unwrap();
            assert!((nodes.weight_sum() - 1.0).abs() < 1e-12, "{d}");
            for (i, e) in nodes.entries().iter().enumerate() {
                assert_eq!(nodes.position(e.k, e.l), Some(i));
                for f in &nodes.entries()[i + 1..] {
                    assert!((e.u - f.u).abs() + (e.v - f.v).abs() > 0.0);
                }
            }
            assert!(curve_node_match(d).unwrap(), "{d}");
        }
    }

    #[test]
    fn curve_match_examples() {
        assert!(curve_node_match(DegreePair::new(1, 2).unwrap()).unwrap());
        let d = DegreePair::new(7, 23).unwrap();
        assert!(curve_node_match(d).unwrap());
        assert_eq!(curve_samples(d).len(), 96);
        assert!(matches!(
            curve_node_match(DegreePair::new(2, 4).unwrap()),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn padua_specialization() {
        for m in 1..=20 {
            let d = DegreePair::coprime(m, m + 1).unwrap();
            let nodes = build_nodes(d).unwrap();
            assert_eq!(nodes.len(), (m + 1) * (m + 2) / 2);
            // every node sits on γ_{m,m+1}: it is hit by some curve sample
            let samples = curve_samples(d);
            for e in nodes.entries() {
                assert!(samples.iter().any(|&s| same_point(s, (e.u, e.v))));
            }
        }
    }

    #[test]
    fn spectral_examples() {
        let s = spectral_set(DegreePair::new(1, 2).unwrap()).unwrap();
        assert_eq!(s.pairs(), &[(0, 0), (0, 1), (0, 2)]);
        let s = spectral_set(DegreePair::new(2, 3).unwrap()).unwrap();
        assert_eq!(s.pairs(), &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (0, 3)]);
    }

    #[test]
    fn csv_layout() {
        let nodes = build_nodes(DegreePair::new(1, 2).unwrap()).unwrap();
        let mut buf = Vec::new();
        nodes.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "k,l,u,v,weight,class");
        assert_eq!(lines.len(), 4);
        assert!(lines[3].starts_with("1,1,") && lines[3].ends_with(",edge"));
    }
}
