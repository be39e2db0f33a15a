//! Finite abstract simplicial complexes and their reduced homology.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::context::FieldSpec;
use crate::error::{Error, GuardKind, Result};
use crate::linalg;

/// A simplicial complex stored by its facets.
///
/// Facets are bitmasks over positions in `vertices`. No facets at all is the
/// void complex; the single empty facet is the irrelevant complex `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractComplex {
    vertices: Vec<usize>,
    facets: Vec<u32>,
}

impl AbstractComplex {
    pub fn void(vertices: Vec<usize>) -> Self {
        AbstractComplex { vertices, facets: Vec::new() }
    }

    pub fn irrelevant(vertices: Vec<usize>) -> Self {
        AbstractComplex { vertices, facets: vec![0] }
    }

    /// Builds the complex generated by `faces` (masks over `vertices`);
    /// non-maximal entries are dropped.
    pub fn from_masks(vertices: Vec<usize>, faces: impl IntoIterator<Item = u32>) -> Result<Self> {
        if vertices.len() > 32 {
            return Err(Error::GuardExceeded { guard: GuardKind::HomologyVertices, limit: 32, found: vertices.len() });
        }
        let mut cands: Vec<u32> = faces.into_iter().collect();
        cands.sort_by_key(|m| core::cmp::Reverse(m.count_ones()));
        cands.dedup();
        let mut facets: Vec<u32> = Vec::new();
        for c in cands {
            if !facets.iter().any(|&f| c & f == c) {
                facets.push(c);
            }
        }
        facets.sort_unstable();
        Ok(AbstractComplex { vertices, facets })
    }

    /// Builds the complex generated by faces given as lists of vertex labels.
    pub fn from_faces(faces: &[Vec<usize>]) -> Result<Self> {
        let mut vertices: Vec<usize> = faces.iter().flatten().copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let masks = faces.iter().map(|f| {
            f.iter().fold(0u32, |acc, v| acc | 1 << vertices.binary_search(v).expect("collected above"))
        });
        let masks: Vec<u32> = masks.collect();
        Self::from_masks(vertices, masks)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facet_masks(&self) -> &[u32] {
        &self.facets
    }

    /// Facets as sorted lists of vertex labels.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| self.labels(m)).collect()
    }

    fn labels(&self, mask: u32) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.vertices[i]).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [0]
    }

    /// `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.count_ones() as i32 - 1).max()
    }

    pub fn contains_mask(&self, face: u32) -> bool {
        self.facets.iter().any(|&f| face & f == face)
    }

    /// All faces as masks, grouped by cardinality (index 0 holds `∅`).
    pub fn faces_by_size(&self) -> Vec<Vec<u32>> {
        let Some(dim) = self.dim() else { return Vec::new() };
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); (dim + 2) as usize];
        let mut all: Vec<u32> = Vec::new();
        for &f in &self.facets {
            let mut s = f;
            loop {
                all.push(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        all.sort_unstable();
        all.dedup();
        for m in all {
            by_size[m.count_ones() as usize].push(m);
        }
        by_size
    }

    /// Some vertex lies in every facet (so the complex is acyclic).
    pub fn is_cone(&self) -> bool {
        match self.facets.iter().copied().reduce(|a, b| a & b) {
            Some(common) => common != 0,
            None => false,
        }
    }

    /// Dimensions of reduced homology `H̃_j` for `-1 <= j <= dim`, over `field`.
    /// The void complex has no degrees.
    pub fn reduced_homology(&self, field: FieldSpec, max_vertices: usize) -> Result<BTreeMap<i32, usize>> {
        let mut out = BTreeMap::new();
        let Some(dim) = self.dim() else { return Ok(out) };
        let used = self.facets.iter().fold(0u32, |a, &b| a | b).count_ones() as usize;
        if used > max_vertices {
            return Err(Error::GuardExceeded { guard: GuardKind::HomologyVertices, limit: max_vertices, found: used });
        }
        if self.is_cone() {
            for j in -1..=dim {
                out.insert(j, 0);
            }
            return Ok(out);
        }
        let faces = self.faces_by_size();
        // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces
        let mut ranks = vec![0usize; faces.len() + 1];
        for s in 1..faces.len() {
            ranks[s] = boundary_rank(&faces[s], &faces[s - 1], field);
        }
        for s in 0..faces.len() {
            let h = faces[s].len() - ranks[s] - ranks[s + 1];
            out.insert(s as i32 - 1, h);
        }
        Ok(out)
    }
}

fn boundary_rank(upper: &[u32], lower: &[u32], field: FieldSpec) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = upper
        .iter()
        .map(|&face| {
            let mut row = vec![0i64; lower.len()];
            let mut sign = 1;
            let mut rest = face;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let idx = lower.binary_search(&(face & !bit)).expect("boundary face present");
                row[idx] = sign;
                sign = -sign;
            }
            row
        })
        .collect();
    linalg::rank(&rows, field)
}
