//! Quivers of triangulated marked surfaces, the standard triangulation of a
//! surface with boundary, and the closed-form admissibility predicate for it.
//!
//! A triangulation is a list of triangles, each given by three sides in
//! counterclockwise order. A side is an arc label with a sign; the sign tells
//! whether the triangle runs along the arc in its own direction. A label that
//! occurs in one triangle is a boundary segment; an internal arc occurs in two
//! triangles, once with each sign.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::admissible::annulus_violations;
use crate::error::{Error, Result};
use crate::matrix::{CoefficientVector, ExchangeMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub label: u32,
    pub reversed: bool,
}

impl Side {
    pub fn fwd(label: u32) -> Side {
        Side { label, reversed: false }
    }

    pub fn rev(label: u32) -> Side {
        Side { label, reversed: true }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "-{}", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

/// Which rotational sense counts as clockwise in the arrow rule. Flipping it
/// replaces the quiver by its opposite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    #[default]
    Standard,
    Flipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    triangles: Vec<[Side; 3]>,
    /// Internal arcs in increasing label order; matrix index = position.
    arcs: Vec<u32>,
    boundary: Vec<u32>,
    orientation: Orientation,
}

/// Genus, marked points per boundary component (sorted) and punctures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    pub genus: usize,
    pub boundary: Vec<usize>,
    pub punctures: usize,
}

impl Triangulation {
    pub fn new(triangles: Vec<[Side; 3]>) -> Result<Self> {
        let mut seen: BTreeMap<u32, Vec<bool>> = BTreeMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for (i, s) in tri.iter().enumerate() {
                if s.label == 0 {
                    return Err(Error::InvalidGluing { label: 0, reason: "label 0 is reserved".into() });
                }
                if tri[..i].iter().any(|o| o.label == s.label) {
                    return Err(Error::SelfFoldedTriangle { triangle: t });
                }
                seen.entry(s.label).or_default().push(s.reversed);
            }
        }
        let mut arcs = Vec::new();
        let mut boundary = Vec::new();
        for (label, signs) in seen {
            match signs.as_slice() {
                [_] => boundary.push(label),
                [a, b] if a != b => arcs.push(label),
                [_, _] => {
                    return Err(Error::InvalidGluing { label, reason: "both sides carry the same sign".into() });
                }
                _ => {
                    return Err(Error::InvalidGluing {
                        label,
                        reason: format!("appears in {} triangles", signs.len()),
                    });
                }
            }
        }
        Ok(Triangulation { triangles, arcs, boundary, orientation: Orientation::Standard })
    }

    /// Parses one triangle per line, three signed labels each; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut triangles = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::TriangulationParse { line: no + 1, message };
            let sides: Vec<Side> = line
                .split_whitespace()
                .map(|tok| {
                    let v: i64 = tok.parse().map_err(|_| err(format!("not an integer: {tok:?}")))?;
                    let label = u32::try_from(v.unsigned_abs()).map_err(|_| err(format!("label out of range: {v}")))?;
                    if label == 0 {
                        return Err(err("label 0 is reserved".into()));
                    }
                    Ok(Side { label, reversed: v < 0 })
                })
                .collect::<Result<_>>()?;
            let tri: [Side; 3] =
                sides.try_into().map_err(|s: Vec<Side>| err(format!("expected 3 sides, found {}", s.len())))?;
            triangles.push(tri);
        }
        Triangulation::new(triangles)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.triangles {
            out.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
        }
        out
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    pub fn arcs(&self) -> &[u32] {
        &self.arcs
    }

    pub fn boundary_segments(&self) -> &[u32] {
        &self.boundary
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    /// Matrix index of an internal arc.
    pub fn index_of(&self, label: u32) -> Option<usize> {
        self.arcs.binary_search(&label).ok()
    }

    /// Reads off genus, boundary components and punctures from the gluing.
    pub fn topology(&self) -> Topology {
        // endpoints: 2 * position of the label (tail), 2 * position + 1 (head)
        let labels: Vec<u32> = {
            let mut v: Vec<u32> = self.arcs.iter().chain(&self.boundary).copied().collect();
            v.sort_unstable();
            v
        };
        let pos = |l: u32| labels.binary_search(&l).expect("label of this triangulation");
        let start = |s: Side| 2 * pos(s.label) + usize::from(s.reversed);
        let end = |s: Side| 2 * pos(s.label) + usize::from(!s.reversed);
        let mut parent: Vec<usize> = (0..2 * labels.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for t in &self.triangles {
            for i in 0..3 {
                let a = find(&mut parent, end(t[i]));
                let b = find(&mut parent, start(t[(i + 1) % 3]));
                parent[a] = b;
            }
        }
        let mut vertices = std::collections::HashSet::new();
        for x in 0..parent.len() {
            let r = find(&mut parent, x);
            vertices.insert(r);
        }
        // boundary segments as traversed by their triangle, chained at shared vertices
        let mut next_from: HashMap<usize, usize> = HashMap::new();
        let mut segs = Vec::new();
        for t in &self.triangles {
            for &s in t {
                if self.boundary.binary_search(&s.label).is_ok() {
                    let a = find(&mut parent, start(s));
                    let b = find(&mut parent, end(s));
                    next_from.insert(a, b);
                    segs.push(a);
                }
            }
        }
        let mut components = Vec::new();
        let mut visited = std::collections::HashSet::new();
        for &s in &segs {
            if visited.contains(&s) {
                continue;
            }
            let mut len = 0;
            let mut cur = s;
            while visited.insert(cur) {
                len += 1;
                cur = next_from[&cur];
            }
            components.push(len);
        }
        components.sort_unstable();
        let v = vertices.len() as i64;
        let e = (self.arcs.len() + self.boundary.len()) as i64;
        let f = self.triangles.len() as i64;
        let chi = v - e + f;
        let b = components.len() as i64;
        let genus = ((2 - b - chi) / 2) as usize;
        let punctures = vertices.len() - segs.len();
        Topology { genus, boundary: components, punctures }
    }
}

/// Signed adjacency of internal arcs: `b_ij` counts triangles in which `j`
/// follows `i` clockwise, minus those in which it follows counterclockwise.
pub fn quiver_from_triangulation(t: &Triangulation) -> Result<ExchangeMatrix> {
    let n = t.arcs.len();
    let mut entries = vec![0i64; n * n];
    let sign = match t.orientation {
        Orientation::Standard => 1,
        Orientation::Flipped => -1,
    };
    for (k, tri) in t.triangles.iter().enumerate() {
        if tri[0].label == tri[1].label || tri[1].label == tri[2].label || tri[0].label == tri[2].label {
            return Err(Error::SelfFoldedTriangle { triangle: k });
        }
        for i in 0..3 {
            // tri[i + 1] follows tri[i] counterclockwise
            let (Some(a), Some(b)) = (t.index_of(tri[i].label), t.index_of(tri[(i + 1) % 3].label)) else {
                continue;
            };
            entries[a * n + b] -= sign;
            entries[b * n + a] += sign;
        }
    }
    ExchangeMatrix::from_parts(n, n, entries, None)
}

/// Genus, marked points on each boundary component (the first one is the
/// outer component) and number of punctures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSpec {
    pub genus: usize,
    pub boundary: Vec<usize>,
    pub punctures: usize,
}

/// Vertex groups of the quiver of a standard triangulation. `interior` must
/// vanish, `inner` and `outer` are constrained only through weight-4 arrows,
/// and `(v1, v2)` carry the contribution of the closed curve around the outer
/// boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardMeta {
    pub quiver: ExchangeMatrix,
    pub interior: Vec<usize>,
    pub inner: Vec<usize>,
    pub outer: Vec<usize>,
    pub v1: usize,
    pub v2: usize,
    /// Arc names by matrix index.
    pub names: Vec<String>,
}

/// Predicate for the standard quiver: `b` vanishes on `interior`, satisfies
/// the annulus relations, and `b_v1 = -b_v2 <= 0` (or `b_v1 = -2 b_v2 <= 0`
/// when the symmetrizer entry of `v1` is the smaller one).
pub fn standard_admissible(meta: &StandardMeta, b: &CoefficientVector) -> Result<bool> {
    let n = meta.quiver.n();
    if b.len() != n {
        return Err(Error::IndexMismatch { expected: n, found: b.len() });
    }
    if meta.interior.iter().any(|&i| b[i] != 0) {
        return Ok(false);
    }
    if !annulus_violations(&meta.quiver.with_coefficients(b)?).is_empty() {
        return Ok(false);
    }
    let d = meta.quiver.symmetrizer();
    let (x, y) = (b[meta.v1] as i128, b[meta.v2] as i128);
    Ok(if d[meta.v1] < d[meta.v2] { x == -2 * y && x <= 0 } else { x == -y && x <= 0 })
}

#[derive(Default)]
struct Builder {
    next: u32,
    triangles: Vec<[Side; 3]>,
    names: HashMap<u32, String>,
}

impl Builder {
    fn arc(&mut self, name: impl Into<String>) -> u32 {
        self.next += 1;
        self.names.insert(self.next, name.into());
        self.next
    }

    fn segment(&mut self) -> u32 {
        self.next += 1;
        self.next
    }

    fn segments(&mut self, count: usize) -> Vec<Side> {
        (0..count).map(|_| Side::fwd(self.segment())).collect()
    }

    fn tri(&mut self, a: Side, b: Side, c: Side) {
        self.triangles.push([a, b, c]);
    }

    /// Fans the polygon with the given counterclockwise sides from the start
    /// of the first side. Returns the new diagonals.
    fn fan(&mut self, sides: &[Side], name: &str) -> Vec<u32> {
        let k = sides.len();
        assert!(k >= 3);
        let mut diagonals = Vec::new();
        // g_j runs from the apex to vertex j
        let mut prev = sides[0];
        for j in 1..k - 2 {
            let g = self.arc(format!("{name}{}", diagonals.len() + 1));
            diagonals.push(g);
            self.tri(prev, sides[j], Side::rev(g));
            prev = Side::fwd(g);
        }
        self.tri(prev, sides[k - 2], sides[k - 1]);
        diagonals
    }

    /// Annulus between the loop side `x` and a hole with `c` marked points.
    /// Returns the arcs inside.
    fn hole(&mut self, x: Side, c: usize, tag: usize) -> Vec<u32> {
        let a = self.arc(format!("a{tag}"));
        let b = self.arc(format!("b{tag}"));
        self.tri(x, Side::fwd(a), Side::rev(b));
        let mut sides = vec![Side::rev(a), Side::fwd(b)];
        sides.extend(self.segments(c));
        let mut inside = vec![a, b];
        inside.extend(self.fan(&sides, &format!("t{tag}_")));
        inside
    }

    /// One-holed torus inside the loop side `y`: pentagon `y a b a^-1 b^-1`.
    fn handle(&mut self, y: Side, tag: usize) {
        let alpha = self.arc(format!("alpha{tag}"));
        let beta = self.arc(format!("beta{tag}"));
        let sides = [y, Side::fwd(alpha), Side::fwd(beta), Side::rev(alpha), Side::rev(beta)];
        self.fan(&sides, &format!("delta{tag}_"));
    }
}

#[derive(Clone, Copy, Debug)]
enum Feature {
    Hole(usize),
    Handle,
    Puncture,
    TwoPunctures,
}

/// Standard triangulation of a surface with boundary: holes, then handles,
/// then punctures placed left to right and enclosed by nested loops based at
/// a marked point `P` of the outer boundary component.
pub fn standard_triangulation(spec: &SurfaceSpec) -> Result<(Triangulation, StandardMeta)> {
    let Some((&outer_points, holes)) = spec.boundary.split_first() else {
        return Err(Error::NoBoundary);
    };
    if spec.boundary.contains(&0) {
        return Err(Error::ExcludedSmallCase("boundary component without marked points".into()));
    }
    if spec.genus == 0 && holes.is_empty() && spec.punctures <= 2 {
        return Err(Error::ExcludedSmallCase("disk with at most two punctures".into()));
    }
    if spec.genus == 0 && holes.len() == 1 && spec.punctures == 0 {
        return Err(Error::ExcludedSmallCase("unpunctured annulus".into()));
    }
    let mut units: Vec<Feature> = holes.iter().map(|&c| Feature::Hole(c)).collect();
    units.extend(std::iter::repeat_n(Feature::Handle, spec.genus));
    if units.is_empty() {
        units.push(Feature::TwoPunctures);
        units.extend(std::iter::repeat_n(Feature::Puncture, spec.punctures - 2));
    } else {
        units.extend(std::iter::repeat_n(Feature::Puncture, spec.punctures));
    }

    let mut bld = Builder::default();
    let k = units.len();
    let mut inner_arcs = Vec::new();
    // loops[i] encloses units[0..=i]; the outermost is a boundary segment when P is alone on its component
    let loops: Vec<u32> = (0..k)
        .map(|i| if i + 1 == k && outer_points == 1 { bld.segment() } else { bld.arc(format!("l{}", i + 1)) })
        .collect();
    let mut gamma_triangle = None;
    for (i, unit) in units.iter().enumerate() {
        let out = Side::fwd(loops[i]);
        let first = bld.triangles.len();
        match (i, *unit) {
            (0, Feature::Hole(c)) => inner_arcs.extend(bld.hole(out, c, 1)),
            (0, Feature::Handle) => bld.handle(out, 1),
            (0, Feature::TwoPunctures) => {
                let u = bld.arc("u");
                let v = bld.arc("v");
                let w = bld.arc("w");
                let h = bld.arc("h");
                bld.tri(out, Side::fwd(u), Side::rev(v));
                bld.tri(Side::fwd(v), Side::fwd(h), Side::rev(w));
                bld.tri(Side::rev(u), Side::fwd(w), Side::rev(h));
            }
            (_, Feature::Puncture) => {
                let e = bld.arc(format!("e{}", i + 1));
                let f = bld.arc(format!("f{}", i + 1));
                bld.tri(out, Side::fwd(f), Side::rev(e));
                bld.tri(Side::rev(loops[i - 1]), Side::fwd(e), Side::rev(f));
            }
            (_, Feature::Hole(c)) => {
                let x = bld.arc(format!("x{}", i + 1));
                bld.tri(out, Side::rev(loops[i - 1]), Side::rev(x));
                inner_arcs.extend(bld.hole(Side::fwd(x), c, i + 1));
            }
            (_, Feature::Handle) => {
                let y = bld.arc(format!("y{}", i + 1));
                bld.tri(out, Side::rev(loops[i - 1]), Side::rev(y));
                bld.handle(Side::fwd(y), i + 1);
            }
            (_, Feature::TwoPunctures) => unreachable!("two-puncture monogon is innermost"),
        }
        if i + 1 == k {
            gamma_triangle = Some(bld.triangles[first]);
        }
    }
    let mut outer_arcs = Vec::new();
    if outer_points >= 2 {
        let mut sides = vec![Side::rev(loops[k - 1])];
        sides.extend(bld.segments(outer_points));
        outer_arcs.push(loops[k - 1]);
        outer_arcs.extend(bld.fan(&sides, "o"));
    }
    let gamma = gamma_triangle.expect("at least one unit");
    debug_assert_eq!(gamma[0], Side::fwd(loops[k - 1]));

    let names = std::mem::take(&mut bld.names);
    let tri = Triangulation::new(bld.triangles)?;
    let quiver = quiver_from_triangulation(&tri)?;
    let idx = |l: u32| tri.index_of(l).expect("internal arc");
    // v1 is the side ending where the outer loop starts
    let (v1, v2) = (idx(gamma[2].label), idx(gamma[1].label));
    let inner: Vec<usize> = sorted(inner_arcs.iter().map(|&l| idx(l)));
    let outer: Vec<usize> = sorted(outer_arcs.iter().map(|&l| idx(l)));
    let interior: Vec<usize> =
        (0..tri.arcs().len()).filter(|i| !inner.contains(i) && !outer.contains(i) && *i != v1 && *i != v2).collect();
    let names = tri.arcs().iter().map(|l| names.get(l).cloned().unwrap_or_else(|| l.to_string())).collect();
    let meta = StandardMeta { quiver, interior, inner, outer, v1, v2, names };
    Ok((tri, meta))
}

fn sorted(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v
}

/// Expected number of internal arcs of a triangulation of `spec`.
pub fn arc_count(spec: &SurfaceSpec) -> i64 {
    let b = spec.boundary.len() as i64;
    let c: i64 = spec.boundary.iter().map(|&x| x as i64).sum();
    6 * spec.genus as i64 + 3 * b + 3 * spec.punctures as i64 + c - 6
}

/// Annulus with `p` marked points on the outer and `q` on the inner boundary:
/// two arcs from the first outer point to the first inner point bound the two
/// triangles of a once-marked annulus, and the remaining points sit in fanned
/// polygons cut off by loops.
pub fn annulus_triangulation(p: usize, q: usize) -> Result<Triangulation> {
    if p == 0 || q == 0 {
        return Err(Error::ExcludedSmallCase("annulus boundary without marked points".into()));
    }
    let mut bld = Builder::default();
    let g1 = bld.arc("gamma1");
    let g2 = bld.arc("gamma2");
    let d_out = if p == 1 { bld.segment() } else { bld.arc("outer loop") };
    let d_in = if q == 1 { bld.segment() } else { bld.arc("inner loop") };
    bld.tri(Side::fwd(d_out), Side::fwd(g1), Side::rev(g2));
    bld.tri(Side::fwd(g2), Side::rev(d_in), Side::rev(g1));
    for (count, lp) in [(p, d_out), (q, d_in)] {
        if count >= 2 {
            let mut sides = vec![Side::rev(lp)];
            if lp == d_in {
                sides[0] = Side::fwd(lp);
            }
            sides.extend(bld.segments(count));
            bld.fan(&sides, "g");
        }
    }
    Triangulation::new(bld.triangles)
}

/// One row of the table of laminations on the once-marked annulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LaminationEntry {
    pub id: &'static str,
    pub closed: bool,
    pub b1: i64,
    pub b2: i64,
}

/// Coefficients of the bridging curves on the annulus with one marked point on
/// each boundary component, consecutive curves differing by one twist, and of
/// the closed curve around the core.
pub fn s11_bridging_table() -> Vec<LaminationEntry> {
    let bridging = [(-2, 3), (-1, 2), (0, 1), (1, 0), (0, -1), (-1, 0), (-2, 1)];
    const IDS: [&str; 7] = ["bridge1", "bridge2", "bridge3", "bridge4", "bridge5", "bridge6", "bridge7"];
    let mut out: Vec<LaminationEntry> =
        bridging.iter().zip(IDS).map(|(&(b1, b2), id)| LaminationEntry { id, closed: false, b1, b2 }).collect();
    out.push(LaminationEntry { id: "closed", closed: true, b1: -1, b2: 1 });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn once_marked_annulus_gives_double_arrow() {
        let t = Triangulation::parse("# annulus\n1 2 -3\n3 -4 -2\n").unwrap();
        assert_eq!(t.arcs(), &[2, 3]);
        let q = quiver_from_triangulation(&t).unwrap();
        assert_eq!(q.weight(0, 1), 4);
        assert_eq!(t.topology(), Topology { genus: 0, boundary: vec![1, 1], punctures: 0 });
    }

    #[test]
    fn square_with_diagonal() {
        let t = Triangulation::parse("1 2 5\n-5 3 4").unwrap();
        let q = quiver_from_triangulation(&t).unwrap();
        assert_eq!((q.n(), q.entries()), (1, &[0][..]));
        assert_eq!(t.topology().boundary, vec![4]);
    }

    #[test]
    fn flipped_orientation_gives_opposite() {
        let t = annulus_triangulation(2, 3).unwrap();
        let q = quiver_from_triangulation(&t).unwrap();
        let r = quiver_from_triangulation(&t.clone().with_orientation(Orientation::Flipped)).unwrap();
        assert_eq!(r, q.opposite());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Triangulation::parse("1 2"), Err(Error::TriangulationParse { line: 1, .. })));
        assert!(matches!(Triangulation::parse("1 1 2"), Err(Error::SelfFoldedTriangle { triangle: 0 })));
        assert!(matches!(Triangulation::parse("1 2 3\n1 4 5"), Err(Error::InvalidGluing { label: 1, .. })));
        assert!(matches!(Triangulation::parse("1 x 3"), Err(Error::TriangulationParse { .. })));
    }

    #[test]
    fn text_roundtrip() {
        let t = annulus_triangulation(3, 2).unwrap();
        assert_eq!(Triangulation::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn excluded_specs() {
        let s = |g, b: &[usize], p| SurfaceSpec { genus: g, boundary: b.to_vec(), punctures: p };
        assert_eq!(standard_triangulation(&s(1, &[], 2)).unwrap_err(), Error::NoBoundary);
        assert!(matches!(standard_triangulation(&s(0, &[1, 1], 0)), Err(Error::ExcludedSmallCase(_))));
        assert!(matches!(standard_triangulation(&s(0, &[3], 2)), Err(Error::ExcludedSmallCase(_))));
    }
}
