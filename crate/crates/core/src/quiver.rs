//! The Auslander-Reiten quiver of `D^c(Sᵈ)` on a finite window of labels
//! `Σʲ N_m`, its components and its `ℤA∞` shape.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::loop_sphere::{sphere_ar_triangle, SphereIndecLabel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("sphere dimension must be at least 2, got {0}")]
    Dimension(i32),
    #[error("window too small: need jmax − jmin ≥ {need_j} and mmax ≥ 2")]
    WindowTooSmall { need_j: i32 },
}

/// Labels with `jmin ≤ j ≤ jmax` and `m ≤ mmax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub jmin: i32,
    pub jmax: i32,
    pub mmax: u32,
}

impl Window {
    pub fn contains(&self, l: &SphereIndecLabel) -> bool {
        (self.jmin..=self.jmax).contains(&l.j) && l.m <= self.mmax
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationQuiver {
    d: i32,
    window: Window,
    vertices: Vec<SphereIndecLabel>,
    index: BTreeMap<SphereIndecLabel, usize>,
    arrows: BTreeSet<(usize, usize)>,
    translation: BTreeMap<usize, usize>,
}

/// Builds the quiver from the middle terms of the AR triangles: each
/// middle summand `N'` of the triangle ending in `P` gives an arrow
/// `N' → P`, and `P` is translated to `τP = Σ^{d−1}P`.
pub fn build_quiver(d: i32, jmin: i32, jmax: i32, mmax: u32) -> Result<TranslationQuiver, QuiverError> {
    if d < 2 {
        return Err(QuiverError::Dimension(d));
    }
    let need_j = 2 * (d - 1);
    if jmax - jmin < need_j || mmax < 2 {
        return Err(QuiverError::WindowTooSmall { need_j });
    }
    let window = Window { jmin, jmax, mmax };
    let vertices: Vec<SphereIndecLabel> = (jmin..=jmax)
        .flat_map(|j| (0..=mmax).map(move |m| SphereIndecLabel::new(d, j, m)))
        .collect();
    let mut q = TranslationQuiver::from_parts(d, window, vertices, Vec::new(), Vec::new());
    let mut arrows = Vec::new();
    let mut translation = Vec::new();
    for p in q.vertices.clone() {
        let tri = sphere_ar_triangle(&p).expect("d ≥ 2");
        for n in tri.middle.iter().filter(|n| window.contains(n)) {
            arrows.push((*n, p));
        }
        if window.contains(&tri.left) {
            translation.push((p, tri.left));
        }
    }
    q.set_arrows(arrows);
    q.set_translation(translation);
    Ok(q)
}

impl TranslationQuiver {
    /// A quiver with arbitrary data; arrows and translation pairs with an
    /// endpoint outside `vertices` are dropped.
    pub fn from_parts(
        d: i32,
        window: Window,
        mut vertices: Vec<SphereIndecLabel>,
        arrows: Vec<(SphereIndecLabel, SphereIndecLabel)>,
        translation: Vec<(SphereIndecLabel, SphereIndecLabel)>,
    ) -> Self {
        vertices.sort_by_key(|l| (l.j, l.m));
        vertices.dedup();
        let index = vertices.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let mut q = TranslationQuiver {
            d,
            window,
            vertices,
            index,
            arrows: BTreeSet::new(),
            translation: BTreeMap::new(),
        };
        q.set_arrows(arrows);
        q.set_translation(translation);
        q
    }

    fn set_arrows(&mut self, arrows: Vec<(SphereIndecLabel, SphereIndecLabel)>) {
        self.arrows = arrows
            .into_iter()
            .filter_map(|(a, b)| Some((*self.index.get(&a)?, *self.index.get(&b)?)))
            .collect();
    }

    fn set_translation(&mut self, pairs: Vec<(SphereIndecLabel, SphereIndecLabel)>) {
        self.translation = pairs
            .into_iter()
            .filter_map(|(a, b)| Some((*self.index.get(&a)?, *self.index.get(&b)?)))
            .collect();
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Vertices in `(j, m)` order.
    pub fn vertices(&self) -> &[SphereIndecLabel] {
        &self.vertices
    }

    pub fn index_of(&self, l: &SphereIndecLabel) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Arrows as vertex-index pairs in lexicographic order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().copied()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn has_arrow(&self, from: usize, to: usize) -> bool {
        self.arrows.contains(&(from, to))
    }

    /// `τ` as pairs `(P, τP)` in vertex order.
    pub fn translation(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.translation.iter().map(|(&a, &b)| (a, b))
    }

    pub fn tau(&self, v: usize) -> Option<usize> {
        self.translation.get(&v).copied()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|&&(_, b)| b == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|&&(a, _)| a == v).count()
    }

    pub fn without_arrow(&self, from: usize, to: usize) -> Self {
        let mut q = self.clone();
        q.arrows.remove(&(from, to));
        q
    }

    /// The same arrows with `τ` replaced by `tau` wherever it lands in the
    /// window.
    pub fn with_translation(&self, tau: impl Fn(&SphereIndecLabel) -> SphereIndecLabel) -> Self {
        let mut q = self.clone();
        let pairs = self.vertices.iter().map(|v| (*v, tau(v))).collect();
        q.set_translation(pairs);
        q
    }

    /// Vertices whose AR neighborhood lies in the window:
    /// `jmin + (d−1) ≤ j ≤ jmax − (d−1)` and `m < mmax`.
    pub fn interior(&self) -> Window {
        let delta = self.d - 1;
        Window {
            jmin: self.window.jmin + delta,
            jmax: self.window.jmax - delta,
            mmax: self.window.mmax.saturating_sub(1),
        }
    }

    fn interior_vertices(&self, window: &Window) -> Vec<usize> {
        let inner = self.interior();
        (0..self.vertices.len())
            .filter(|&v| window.contains(&self.vertices[v]) && inner.contains(&self.vertices[v]))
            .collect()
    }
}

/// Connected components of the underlying undirected graph, each sorted,
/// ordered by their first vertex.
pub fn components(q: &TranslationQuiver) -> Vec<Vec<usize>> {
    let n = q.vertices.len();
    let mut adjacent = vec![Vec::new(); n];
    for (a, b) in q.arrows() {
        adjacent[a].push(b);
        adjacent[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in &adjacent[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `ℤA∞` coordinates `(n, i)` of `Σʲ N_m`: `i = m`, `n = −(j − ρ)/(d−1) − m`
/// with `ρ = j mod (d−1)`. In them the arrows are `(n, i) → (n, i+1)` and
/// `(n, i+1) → (n+1, i)`, and `τ(n, i) = (n−1, i)`.
pub fn za_coordinates(l: &SphereIndecLabel) -> (i32, u32) {
    let delta = l.d - 1;
    let rho = l.j.rem_euclid(delta);
    (-(l.j - rho) / delta - l.m as i32, l.m)
}

/// Whether `component` restricted to the interior of `window` has exactly
/// the `ℤA∞` arrows and translation.
pub fn check_za_infinity(q: &TranslationQuiver, component: &[usize], window: &Window) -> bool {
    let members: BTreeSet<usize> = component.iter().copied().collect();
    let Some(&first) = component.first() else {
        return true;
    };
    let delta = q.d - 1;
    let residue = q.vertices[first].j.rem_euclid(delta);
    if component
        .iter()
        .any(|&v| q.vertices[v].j.rem_euclid(delta) != residue)
    {
        return false;
    }
    let coords: BTreeMap<(i32, u32), usize> = component
        .iter()
        .map(|&v| (za_coordinates(&q.vertices[v]), v))
        .collect();
    if coords.len() != component.len() {
        return false;
    }
    let at = |c: (i32, u32)| coords.get(&c).copied();
    for v in q.interior_vertices(window) {
        if !members.contains(&v) {
            continue;
        }
        let (n, i) = za_coordinates(&q.vertices[v]);
        let mut into = vec![at((n - 1, i + 1))];
        let mut out = vec![at((n, i + 1))];
        if i > 0 {
            into.push(at((n, i - 1)));
            out.push(at((n + 1, i - 1)));
        }
        let expect = |list: Vec<Option<usize>>| -> Option<BTreeSet<usize>> { list.into_iter().collect() };
        let (Some(into), Some(out)) = (expect(into), expect(out)) else {
            return false;
        };
        let actual_in: BTreeSet<usize> = q.arrows().filter(|&(_, b)| b == v).map(|(a, _)| a).collect();
        let actual_out: BTreeSet<usize> = q.arrows().filter(|&(a, _)| a == v).map(|(_, b)| b).collect();
        if actual_in != into || actual_out != out || q.tau(v) != at((n - 1, i)) {
            return false;
        }
    }
    true
}

/// For every interior `P` and every vertex `N'`, the number of arrows
/// `τP → N'` equals the number of arrows `N' → P`.
pub fn check_stable_translation(q: &TranslationQuiver, window: &Window) -> bool {
    let interior = q.interior_vertices(window);
    let mut images = BTreeSet::new();
    interior.into_iter().all(|p| {
        let Some(tp) = q.tau(p) else {
            return false;
        };
        images.insert(tp) && (0..q.vertices.len()).all(|n| q.has_arrow(tp, n) == q.has_arrow(n, p))
    })
}

/// DOT rendering: solid arrows, dashed `P → τP`, nodes in `(j, m)` order.
pub fn to_dot(q: &TranslationQuiver) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph ar_quiver {{");
    let _ = writeln!(s, "  node [shape=plaintext];");
    for (i, v) in q.vertices.iter().enumerate() {
        let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
    }
    for (a, b) in q.arrows() {
        let _ = writeln!(s, "  v{a} -> v{b};");
    }
    for (a, b) in q.translation() {
        let _ = writeln!(s, "  v{a} -> v{b} [style=dashed, constraint=false];");
    }
    s.push_str("}\n");
    s
}
