use std::collections::HashMap;

use serde::Serialize;

use crate::linalg::ZModMatrix;

use super::CatError;

const NONE: u32 = u32::MAX;

/// Default bound on the number of morphisms of a truncation.
pub const MORPHISM_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category given by its full composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `table[g * n + f]` is `g∘f`, or `u32::MAX` when `f` and `g` are not composable.
    table: Vec<u32>,
    zero: Option<usize>,
    #[serde(skip)]
    homs: Vec<Vec<usize>>,
}

impl FinCategory {
    /// Assembles a category without checking anything; see [`Self::check_axioms`].
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: Vec<u32>,
        zero: Option<usize>,
    ) -> Self {
        let n = objects.len();
        let mut homs = vec![Vec::new(); n * n];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.source * n + m.target].push(i);
        }
        FinCategory {
            objects,
            morphisms,
            identities,
            table,
            zero,
            homs,
        }
    }

    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: Vec<u32>,
        zero: Option<usize>,
    ) -> Result<Self, CatError> {
        let c = Self::from_parts(objects, morphisms, identities, table, zero);
        c.check_axioms()?;
        Ok(c)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn name(&self, m: usize) -> &str {
        &self.morphisms[m].name
    }

    pub fn source(&self, m: usize) -> usize {
        self.morphisms[m].source
    }

    pub fn target(&self, m: usize) -> usize {
        self.morphisms[m].target
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// `g∘f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.table[g * self.morphisms.len() + f];
        (v != NONE).then_some(v as usize)
    }

    /// Hom-set `x → y`, in index order.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn zero_object(&self) -> Option<usize> {
        self.zero
    }

    /// The composite `x → * → y`.
    pub fn zero_morphism(&self, x: usize, y: usize) -> Option<usize> {
        let z = self.zero?;
        let a = *self.hom(x, z).first()?;
        let b = *self.hom(z, y).first()?;
        self.compose(b, a)
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.source(m)] == m
    }

    pub fn is_zero_morphism(&self, m: usize) -> bool {
        self.zero_morphism(self.source(m), self.target(m)) == Some(m)
    }

    /// Identities and zero morphisms.
    pub fn is_degenerate(&self, m: usize) -> bool {
        self.is_identity(m) || self.is_zero_morphism(m)
    }

    /// Overwrites one entry of the composition table, without any checks.
    pub fn with_composite(mut self, g: usize, f: usize, value: usize) -> Self {
        let n = self.morphisms.len();
        self.table[g * n + f] = value as u32;
        self
    }

    pub fn check_axioms(&self) -> Result<(), CatError> {
        let n = self.morphisms.len();
        let err = |s: String| Err(CatError::Axiom(s));
        if self.table.len() != n * n {
            return err(format!("table has {} entries for {n} morphisms", self.table.len()));
        }
        if self.identities.len() != self.objects.len() {
            return err("one identity per object".into());
        }
        for mor in &self.morphisms {
            if mor.source >= self.objects.len() || mor.target >= self.objects.len() {
                return err(format!("{} has an unknown endpoint", mor.name));
            }
        }
        for (x, &id) in self.identities.iter().enumerate() {
            if id >= n || self.source(id) != x || self.target(id) != x {
                return err(format!("identity of {} has wrong endpoints", self.objects[x]));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.target(f) == self.source(g);
                match (composable, self.compose(g, f)) {
                    (false, None) => {}
                    (false, Some(_)) => return err(format!("{}∘{} defined but not composable", self.name(g), self.name(f))),
                    (true, None) => return err(format!("{}∘{} missing", self.name(g), self.name(f))),
                    (true, Some(h)) => {
                        if h >= n || self.source(h) != self.source(f) || self.target(h) != self.target(g) {
                            return err(format!("{}∘{} has wrong endpoints", self.name(g), self.name(f)));
                        }
                    }
                }
            }
        }
        for f in 0..n {
            if self.compose(self.identity(self.target(f)), f) != Some(f)
                || self.compose(f, self.identity(self.source(f))) != Some(f)
            {
                return err(format!("identities do not act trivially on {}", self.name(f)));
            }
        }
        for f in 0..n {
            let y = self.target(f);
            for z in 0..self.objects.len() {
                for &g in self.hom(y, z) {
                    let gf = self.compose(g, f).unwrap();
                    for w in 0..self.objects.len() {
                        for &h in self.hom(z, w) {
                            let left = self.compose(self.compose(h, g).unwrap(), f);
                            let right = self.compose(h, gf);
                            if left != right {
                                return err(format!(
                                    "({}∘{})∘{} ≠ {}∘({}∘{})",
                                    self.name(h),
                                    self.name(g),
                                    self.name(f),
                                    self.name(h),
                                    self.name(g),
                                    self.name(f)
                                ));
                            }
                        }
                    }
                }
            }
        }
        if let Some(z) = self.zero {
            for x in 0..self.objects.len() {
                if self.hom(z, x).len() != 1 || self.hom(x, z).len() != 1 {
                    return err(format!("{} is not a zero object", self.objects[z]));
                }
            }
        }
        Ok(())
    }
}

/// The category `* , 1, 2, 3, 4` with `j_k : k → k+1`, `j_{k+1} j_k = 0`,
/// and zero morphisms through `*` between all other pairs.
pub fn build_toda_category() -> FinCategory {
    let objects: Vec<String> = ["*", "1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut identities = Vec::new();
    for (x, o) in objects.iter().enumerate() {
        identities.push(morphisms.len());
        morphisms.push(Morphism {
            name: format!("1_{o}"),
            source: x,
            target: x,
        });
    }
    let mut zeros = vec![0usize; 25];
    for x in 0..5 {
        for y in 0..5 {
            if x == 0 && y == 0 {
                zeros[0] = identities[0];
                continue;
            }
            zeros[x * 5 + y] = morphisms.len();
            morphisms.push(Morphism {
                name: format!("0_{}{}", objects[x], objects[y]),
                source: x,
                target: y,
            });
        }
    }
    for k in 1..=3 {
        morphisms.push(Morphism {
            name: format!("j{k}"),
            source: k,
            target: k + 1,
        });
    }
    let n = morphisms.len();
    let mut table = vec![NONE; n * n];
    for g in 0..n {
        for f in 0..n {
            let (x, y) = (morphisms[f].source, morphisms[f].target);
            if y != morphisms[g].source {
                continue;
            }
            let z = morphisms[g].target;
            let h = if f == identities[x] {
                g
            } else if g == identities[y] {
                f
            } else {
                // two non-identities: a nonzero composite would be a product
                // of two j's, and j_{k+1} j_k = 0
                zeros[x * 5 + z]
            };
            table[g * n + f] = h as u32;
        }
    }
    FinCategory::new(objects, morphisms, identities, table, Some(0)).expect("the Toda category is a category")
}

/// The full subcategory of `P(Z/m)` on the free modules of rank `0..=N`,
/// with every morphism listed.
#[derive(Clone, Debug)]
pub struct ProjTruncation {
    category: FinCategory,
    modulus: u32,
    matrices: Vec<ZModMatrix>,
    lookup: HashMap<(usize, usize, Vec<u32>), usize>,
}

impl ProjTruncation {
    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn max_rank(&self) -> usize {
        self.category.object_count() - 1
    }

    /// The `target × source` matrix of a morphism.
    pub fn matrix(&self, m: usize) -> &ZModMatrix {
        &self.matrices[m]
    }

    pub fn morphism_of(&self, m: &ZModMatrix) -> Option<usize> {
        self.lookup.get(&(m.cols(), m.rows(), m.entries().to_vec())).copied()
    }
}

pub fn truncated_proj_category(modulus: u32, max_rank: usize) -> Result<ProjTruncation, CatError> {
    truncated_proj_category_with_limit(modulus, max_rank, MORPHISM_LIMIT)
}

pub fn truncated_proj_category_with_limit(
    modulus: u32,
    max_rank: usize,
    limit: usize,
) -> Result<ProjTruncation, CatError> {
    if modulus != 2 && modulus != 4 {
        return Err(CatError::UnsupportedModulus(modulus));
    }
    let mut count = 0usize;
    for r in 0..=max_rank {
        for s in 0..=max_rank {
            count = count.saturating_add((modulus as usize).saturating_pow((r * s) as u32));
        }
    }
    if count > limit {
        return Err(CatError::SizeLimit {
            what: format!("P(Z/{modulus}) up to rank {max_rank}"),
            count,
            limit,
        });
    }
    let objects: Vec<String> = (0..=max_rank).map(|r| r.to_string()).collect();
    let mut morphisms = Vec::with_capacity(count);
    let mut matrices = Vec::with_capacity(count);
    let mut lookup = HashMap::new();
    for r in 0..=max_rank {
        for s in 0..=max_rank {
            let len = r * s;
            for code in 0..(modulus as usize).pow(len as u32) {
                let mut c = code;
                let entries: Vec<u32> = (0..len)
                    .map(|_| {
                        let x = (c % modulus as usize) as u32;
                        c /= modulus as usize;
                        x
                    })
                    .collect();
                let m = ZModMatrix::from_residues(modulus, s, r, entries.clone()).expect("entries are residues");
                lookup.insert((r, s, entries), morphisms.len());
                morphisms.push(Morphism {
                    name: matrix_name(&m),
                    source: r,
                    target: s,
                });
                matrices.push(m);
            }
        }
    }
    let identities: Vec<usize> = (0..=max_rank)
        .map(|r| lookup[&(r, r, ZModMatrix::identity(modulus, r).entries().to_vec())])
        .collect();
    let n = morphisms.len();
    let mut table = vec![NONE; n * n];
    for g in 0..n {
        for f in 0..n {
            if morphisms[f].target != morphisms[g].source {
                continue;
            }
            let p = matrices[g].mul(&matrices[f]);
            table[g * n + f] = lookup[&(p.cols(), p.rows(), p.entries().to_vec())] as u32;
        }
    }
    let category = FinCategory::from_parts(objects, morphisms, identities, table, Some(0));
    Ok(ProjTruncation {
        category,
        modulus,
        matrices,
        lookup,
    })
}

fn matrix_name(m: &ZModMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("0:{}→{}", m.cols(), m.rows());
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join(";"))
}

/// A functor between finite categories, as maps on object and morphism indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: &FinCategory,
        target: &FinCategory,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self, CatError> {
        let err = |s: String| Err(CatError::NotFunctor(s));
        if objects.len() != source.object_count() || morphisms.len() != source.morphism_count() {
            return err("wrong number of images".into());
        }
        for (m, &fm) in morphisms.iter().enumerate() {
            if fm >= target.morphism_count()
                || target.source(fm) != objects[source.source(m)]
                || target.target(fm) != objects[source.target(m)]
            {
                return err(format!("image of {} has wrong endpoints", source.name(m)));
            }
        }
        for x in 0..source.object_count() {
            if morphisms[source.identity(x)] != target.identity(objects[x]) {
                return err(format!("identity of {} not preserved", source.objects()[x]));
            }
        }
        for g in 0..source.morphism_count() {
            for f in 0..source.morphism_count() {
                if let Some(gf) = source.compose(g, f) {
                    if target.compose(morphisms[g], morphisms[f]) != Some(morphisms[gf]) {
                        return err(format!("{}∘{} not preserved", source.name(g), source.name(f)));
                    }
                }
            }
        }
        Ok(Functor { objects, morphisms })
    }

    pub fn identity(c: &FinCategory) -> Self {
        Functor {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn morphism(&self, m: usize) -> usize {
        self.morphisms[m]
    }

    /// `G∘F`, where `self` is `F`.
    pub fn then(&self, g: &Functor) -> Functor {
        Functor {
            objects: self.objects.iter().map(|&x| g.objects[x]).collect(),
            morphisms: self.morphisms.iter().map(|&m| g.morphisms[m]).collect(),
        }
    }
}

/// The functor `Toda → P(Z/m)_{≤N}` classifying `X1 -f-> X2 -g-> X3 -h-> X4`,
/// given as matrices `[f, g, h]`.
pub fn diagram_functor(
    toda: &FinCategory,
    trunc: &ProjTruncation,
    maps: [&ZModMatrix; 3],
) -> Result<Functor, CatError> {
    let p = trunc.category();
    let ranks = [maps[0].cols(), maps[0].rows(), maps[1].rows(), maps[2].rows()];
    if maps[1].cols() != ranks[1] || maps[2].cols() != ranks[2] {
        return Err(CatError::BadDiagram("maps are not composable".into()));
    }
    if ranks.iter().any(|&r| r > trunc.max_rank()) {
        return Err(CatError::BadDiagram("rank exceeds the truncation".into()));
    }
    let mut objects = vec![0usize; toda.object_count()];
    for k in 1..=4 {
        objects[toda.find_object(&k.to_string()).expect("Toda object")] = ranks[k - 1];
    }
    let mut morphisms = Vec::with_capacity(toda.morphism_count());
    for m in 0..toda.morphism_count() {
        let (x, y) = (objects[toda.source(m)], objects[toda.target(m)]);
        let image = if toda.is_identity(m) {
            p.identity(x)
        } else if toda.is_zero_morphism(m) {
            p.zero_morphism(x, y).expect("truncations have a zero object")
        } else {
            let k: usize = toda.name(m)[1..].parse().expect("j-morphism");
            trunc
                .morphism_of(maps[k - 1])
                .ok_or_else(|| CatError::BadDiagram(format!("j{k} is not a morphism of the truncation")))?
        };
        morphisms.push(image);
    }
    Functor::new(toda, p, objects, morphisms).map_err(|e| CatError::BadDiagram(e.to_string()))
}
