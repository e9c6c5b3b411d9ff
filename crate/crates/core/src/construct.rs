//! Constructors for the group catalog: standard families, direct and
//! semidirect products, quotients, and generator-file ingestion.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::{parse_cycles, Perm};

/// Cyclic group of order `n`, acting on `n` points (trivial for `n = 1`).
pub fn cyclic(n: u32) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic: n must be positive".into()));
    }
    let n = n as usize;
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Group::from_generators(vec![Perm::from_images(images)?], n)
}

/// Elementary abelian group of order `p^t` (direct product of `t` copies
/// of the cyclic group of order `p`).
pub fn elementary_abelian(p: u32, t: u32) -> Result<Group> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime { n: p as u64 });
    }
    if t == 0 {
        return Err(Error::InvalidParameter(
            "elementary_abelian: t must be positive".into(),
        ));
    }
    let mut g = cyclic(p)?;
    for _ in 1..t {
        g = direct_product(&g, &cyclic(p)?)?;
    }
    Ok(g)
}

/// Dihedral group of order `2m`.
pub fn dihedral(m: u32) -> Result<Group> {
    match m {
        0 => Err(Error::InvalidParameter("dihedral: m must be positive".into())),
        1 => cyclic(2),
        2 => elementary_abelian(2, 2),
        m => {
            let m = m as usize;
            let rotation: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
            let reflection: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
            Group::from_generators(
                vec![Perm::from_images(rotation)?, Perm::from_images(reflection)?],
                m,
            )
        }
    }
}

/// Symmetric group on `n` points.
pub fn symmetric(n: u32) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("symmetric: n must be positive".into()));
    }
    let n = n as usize;
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    let transposition = parse_cycles("(1 2)", n)?;
    let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Group::from_generators(vec![transposition, Perm::from_images(images)?], n)
}

/// Alternating group on `n` points.
pub fn alternating(n: u32) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("alternating: n must be positive".into()));
    }
    let n = n as usize;
    if n <= 2 {
        return Ok(Group::trivial(n.max(1)));
    }
    let three_cycle = parse_cycles("(1 2 3)", n)?;
    if n == 3 {
        return Group::from_generators(vec![three_cycle], 3);
    }
    // (1 2 ... n) for odd n, (2 3 ... n) for even n: both are even.
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).map(|i| (i + 1) % n).collect()
    } else {
        (0..n).map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 }).collect()
    };
    Group::from_generators(vec![three_cycle, Perm::from_images(long)?], n)
}

/// Quaternion group of order 8 in its regular representation on the
/// elements `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> Group {
    let mul_i = Perm::from_images(vec![2, 3, 1, 0, 7, 6, 4, 5]).unwrap();
    let mul_j = Perm::from_images(vec![4, 5, 6, 7, 1, 0, 3, 2]).unwrap();
    Group::from_generators(vec![mul_i, mul_j], 8).expect("fixed tables")
}

/// External direct product acting on the disjoint union of the factors'
/// point sets; the factors embed as commuting subgroups.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let dg = g.degree();
    let dh = h.degree();
    let mut gens = Vec::new();
    for p in g.generators() {
        let mut images: Vec<usize> = (0..dg + dh).collect();
        for (i, img) in images.iter_mut().enumerate().take(dg) {
            *img = p.apply(i);
        }
        gens.push(Perm::from_images(images)?);
    }
    for q in h.generators() {
        let mut images: Vec<usize> = (0..dg + dh).collect();
        for i in 0..dh {
            images[dg + i] = dg + q.apply(i);
        }
        gens.push(Perm::from_images(images)?);
    }
    Group::from_generators(gens, dg + dh)
}

/// Prescription for a semidirect product `N ⋊ H`.
///
/// `action[i]` lists the images of `normal_part`'s generators under the
/// automorphism attached to `acting_part`'s generator `i`; the attached
/// automorphism is conjugation on the right, `x ↦ x^{h_i}`.
#[derive(Clone, Debug)]
pub struct ActionSpec {
    pub normal_part: Group,
    pub acting_part: Group,
    pub action: Vec<Vec<Perm>>,
}

/// A constructed semidirect product with its two tagged factors.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: Group,
    pub normal_image: Group,
    pub acting_image: Group,
}

/// Builds `N ⋊ H` as a permutation group on the `|N|·|H|` formal products
/// `h·n`. Validates that each generator assignment extends to an
/// automorphism of `N` and that the assignment respects the relations of
/// `H` before constructing anything.
pub fn semidirect_product(spec: &ActionSpec) -> Result<SemidirectProduct> {
    let normal = &spec.normal_part;
    let acting = &spec.acting_part;
    if spec.action.len() != acting.generators().len() {
        return Err(Error::InvalidAction(format!(
            "expected one automorphism per acting generator ({}), got {}",
            acting.generators().len(),
            spec.action.len()
        )));
    }

    let n_elems = normal.elements()?;
    let n_index: HashMap<&Perm, usize> =
        n_elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let h_elems = acting.elements()?;
    let h_index: HashMap<&Perm, usize> =
        h_elems.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // Extend each generator assignment over all of N and check it is an
    // automorphism.
    let mut autos: Vec<Vec<usize>> = Vec::with_capacity(spec.action.len());
    for images in &spec.action {
        autos.push(extend_automorphism(normal, &n_elems, &n_index, images)?);
    }

    // The assignment must respect the relations of H: the graph group
    // generated by (h_i, φ_i) pairs has order |H| exactly when h_i ↦ φ_i
    // extends to a homomorphism H → Sym(N).
    let dh = acting.degree();
    let n_count = n_elems.len();
    let mut graph_gens = Vec::new();
    for (hg, auto) in acting.generators().iter().zip(&autos) {
        let mut images: Vec<usize> = (0..dh + n_count).collect();
        for (i, img) in images.iter_mut().enumerate().take(dh) {
            *img = hg.apply(i);
        }
        for (x, &phi_x) in auto.iter().enumerate() {
            images[dh + x] = dh + phi_x;
        }
        graph_gens.push(Perm::from_images(images)?);
    }
    let graph = Group::from_generators(graph_gens, (dh + n_count).max(1))?;
    if graph.order() != acting.order() {
        return Err(Error::InvalidAction(
            "assignment does not respect the relations of the acting part".into(),
        ));
    }

    // Points are pairs (h, n) ≙ h·n, indexed h_idx · |N| + n_idx.
    let h_count = h_elems.len();
    let point = |h_idx: usize, n_idx: usize| h_idx * n_count + n_idx;
    let degree = h_count * n_count;

    let mut gens = Vec::new();
    let mut normal_gens = Vec::new();
    let mut acting_gens = Vec::new();
    // Right multiplication by a generator x of N: h·n ↦ h·(nx).
    for x in normal.generators() {
        let mut images = vec![0usize; degree];
        for h_idx in 0..h_count {
            for (n_idx, n) in n_elems.iter().enumerate() {
                let nx = n.compose(x)?;
                images[point(h_idx, n_idx)] = point(h_idx, n_index[&nx]);
            }
        }
        let p = Perm::from_images(images)?;
        gens.push(p.clone());
        normal_gens.push(p);
    }
    // Right multiplication by a generator y of H: h·n·y = (hy)·(n^y).
    for (y, auto) in acting.generators().iter().zip(&autos) {
        let mut images = vec![0usize; degree];
        for (h_idx, h) in h_elems.iter().enumerate() {
            let hy = h.compose(y)?;
            let hy_idx = h_index[&hy];
            for n_idx in 0..n_count {
                images[point(h_idx, n_idx)] = point(hy_idx, auto[n_idx]);
            }
        }
        let p = Perm::from_images(images)?;
        gens.push(p.clone());
        acting_gens.push(p);
    }

    let group = Group::from_generators(gens, degree)?;
    if group.order() != normal.order() * acting.order() {
        return Err(Error::InvalidAction(
            "constructed product has wrong order".into(),
        ));
    }
    let normal_image = Group::from_generators(normal_gens, degree)?;
    let acting_image = Group::from_generators(acting_gens, degree)?;
    Ok(SemidirectProduct {
        group,
        normal_image,
        acting_image,
    })
}

/// Extends generator images to a permutation of the full element list and
/// verifies bijectivity plus the homomorphism law.
fn extend_automorphism(
    normal: &Group,
    n_elems: &[Perm],
    n_index: &HashMap<&Perm, usize>,
    gen_images: &[Perm],
) -> Result<Vec<usize>> {
    if gen_images.len() != normal.generators().len() {
        return Err(Error::InvalidAction(format!(
            "automorphism must list images for all {} normal generators",
            normal.generators().len()
        )));
    }
    for img in gen_images {
        if !normal.contains(img) {
            return Err(Error::InvalidAction(
                "generator image lies outside the normal part".into(),
            ));
        }
    }
    let count = n_elems.len();
    let identity_idx = n_index[&Perm::identity(normal.degree())];
    let mut image: Vec<Option<Perm>> = vec![None; count];
    image[identity_idx] = Some(Perm::identity(normal.degree()));
    let mut queue = vec![identity_idx];
    let mut qi = 0;
    while qi < queue.len() {
        let x_idx = queue[qi];
        qi += 1;
        let phi_x = image[x_idx].clone().unwrap();
        for (g, phi_g) in normal.generators().iter().zip(gen_images) {
            let y = n_elems[x_idx].compose(g)?;
            let y_idx = n_index[&y];
            if image[y_idx].is_none() {
                image[y_idx] = Some(phi_x.compose(phi_g)?);
                queue.push(y_idx);
            }
        }
    }
    let mut table = Vec::with_capacity(count);
    for img in &image {
        let img = img.as_ref().ok_or_else(|| {
            Error::InvalidAction("normal part not generated by its generators".into())
        })?;
        let idx = *n_index.get(img).ok_or_else(|| {
            Error::InvalidAction("image escapes the normal part".into())
        })?;
        table.push(idx);
    }
    // Bijectivity.
    let mut seen = vec![false; count];
    for &t in &table {
        if seen[t] {
            return Err(Error::InvalidAction(
                "generator images do not define a bijection".into(),
            ));
        }
        seen[t] = true;
    }
    // Homomorphism law on (element, generator) pairs; products of
    // generators then follow by induction.
    for (x_idx, x) in n_elems.iter().enumerate() {
        for (g, phi_g) in normal.generators().iter().zip(gen_images) {
            let xg = x.compose(g)?;
            let lhs = table[n_index[&xg]];
            let rhs_perm = n_elems[table[x_idx]].compose(phi_g)?;
            if n_elems[lhs] != rhs_perm {
                return Err(Error::InvalidAction(
                    "generator images do not extend to an automorphism".into(),
                ));
            }
        }
    }
    Ok(table)
}

/// `C_n ⋊ C_m` where the acting generator conjugates the normal generator
/// to its `k`-th power.
pub fn cyclic_semidirect(n: u32, m: u32, k: u32) -> Result<Group> {
    let normal = cyclic(n)?;
    let acting = cyclic(m)?;
    let gen = normal.generators()[0].clone();
    let mut power = Perm::identity(normal.degree());
    for _ in 0..k {
        power = power.compose(&gen)?;
    }
    let spec = ActionSpec {
        normal_part: normal,
        acting_part: acting,
        action: vec![vec![power]],
    };
    Ok(semidirect_product(&spec)?.group)
}

/// Image of `G` acting on the right cosets of a normal subgroup `N`,
/// together with the projection map.
pub fn quotient_as_group(g: &Group, n: &Group) -> Result<(Group, Projection)> {
    if !g.contains_group(n) {
        return Err(Error::NotASubgroup);
    }
    for x in n.generators() {
        for a in g.generators() {
            if !n.contains(&x.conjugate(a)?) {
                return Err(Error::NotNormal);
            }
        }
    }
    let elements = g.elements()?;
    let index: HashMap<&Perm, usize> =
        elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n_elements = n.elements()?;

    let mut coset_of = vec![usize::MAX; elements.len()];
    let mut reps: Vec<usize> = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let coset_id = reps.len();
        reps.push(i);
        for nn in &n_elements {
            let member = nn.compose(e)?;
            coset_of[index[&member]] = coset_id;
        }
    }
    let out_degree = reps.len();

    let image_of = |p: &Perm| -> Result<Perm> {
        let mut images = vec![0usize; out_degree];
        for (j, &rep) in reps.iter().enumerate() {
            let moved = elements[rep].compose(p)?;
            images[j] = coset_of[*index.get(&moved).ok_or(Error::NotAnElement)?];
        }
        Perm::from_images(images)
    };

    let mut q_gens = Vec::new();
    for a in g.generators() {
        q_gens.push(image_of(a)?);
    }
    let quotient = Group::from_generators(q_gens, out_degree.max(1))?;
    let projection = Projection {
        elements,
        coset_of,
        reps,
        out_degree,
    };
    Ok((quotient, projection))
}

/// The projection `G → G/N` attached to a quotient.
#[derive(Clone, Debug)]
pub struct Projection {
    elements: Vec<Perm>,
    coset_of: Vec<usize>,
    reps: Vec<usize>,
    out_degree: usize,
}

impl Projection {
    /// Image of an element of `G` as a permutation of the cosets.
    pub fn apply(&self, p: &Perm) -> Result<Perm> {
        let mut images = vec![0usize; self.out_degree];
        for (j, &rep) in self.reps.iter().enumerate() {
            let moved = self.elements[rep].compose(p)?;
            let idx = self
                .elements
                .binary_search(&moved)
                .map_err(|_| Error::NotAnElement)?;
            images[j] = self.coset_of[idx];
        }
        Perm::from_images(images)
    }

    /// Elements of `G` that project to the identity.
    pub fn kernel_elements(&self) -> Vec<&Perm> {
        let identity = Perm::identity(self.elements[0].degree());
        let identity_idx = self
            .elements
            .binary_search(&identity)
            .expect("groups contain the identity");
        let identity_coset = self.coset_of[identity_idx];
        self.elements
            .iter()
            .enumerate()
            .filter(|(i, _)| self.coset_of[*i] == identity_coset)
            .map(|(_, p)| p)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Construction recipe for a catalog entry; rebuilding from it yields a
/// group isomorphic to the stored one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Cyclic(u32),
    ElementaryAbelian(u32, u32),
    Dihedral(u32),
    Symmetric(u32),
    Alternating(u32),
    Quaternion,
    CyclicSemidirect { n: u32, m: u32, k: u32 },
    Product(Box<Provenance>, Box<Provenance>),
    File(String),
}

impl Provenance {
    pub fn rebuild(&self) -> Result<Group> {
        match self {
            Provenance::Cyclic(n) => cyclic(*n),
            Provenance::ElementaryAbelian(p, t) => elementary_abelian(*p, *t),
            Provenance::Dihedral(m) => dihedral(*m),
            Provenance::Symmetric(n) => symmetric(*n),
            Provenance::Alternating(n) => alternating(*n),
            Provenance::Quaternion => Ok(quaternion8()),
            Provenance::CyclicSemidirect { n, m, k } => cyclic_semidirect(*n, *m, *k),
            Provenance::Product(a, b) => direct_product(&a.rebuild()?, &b.rebuild()?),
            Provenance::File(path) => Ok(load_group(Path::new(path))?.group),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Cyclic(n) => write!(f, "cyclic({n})"),
            Provenance::ElementaryAbelian(p, t) => write!(f, "elementary_abelian({p},{t})"),
            Provenance::Dihedral(m) => write!(f, "dihedral({m})"),
            Provenance::Symmetric(n) => write!(f, "symmetric({n})"),
            Provenance::Alternating(n) => write!(f, "alternating({n})"),
            Provenance::Quaternion => write!(f, "quaternion8"),
            Provenance::CyclicSemidirect { n, m, k } => {
                write!(f, "semidirect(C{n},C{m},x^{k})")
            }
            Provenance::Product(a, b) => write!(f, "product({a},{b})"),
            Provenance::File(path) => write!(f, "file({path})"),
        }
    }
}

/// A named group in a catalog.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Group,
    pub provenance: Provenance,
}

/// Deterministic catalog of small groups up to `max_order`: the standard
/// families, the fixed semidirect products, and all pairwise direct
/// products of those that fit. Isomorphic duplicates are allowed; names
/// record provenance.
pub fn standard_catalog(max_order: u64) -> Result<Vec<CatalogEntry>> {
    if max_order < 1 {
        return Err(Error::InvalidParameter("max_order must be ≥ 1".into()));
    }
    let mut base: Vec<CatalogEntry> = Vec::new();
    let push = |name: String, group: Group, provenance: Provenance,
                    base: &mut Vec<CatalogEntry>| {
        base.push(CatalogEntry {
            name,
            group,
            provenance,
        });
    };

    for n in 1..=max_order.min(u32::MAX as u64) as u32 {
        if n as u64 <= max_order {
            push(format!("C{n}"), cyclic(n)?, Provenance::Cyclic(n), &mut base);
        }
    }
    // t ≥ 2: the t = 1 groups already appear as cyclic entries.
    for p in 2..=((max_order as f64).sqrt() as u32 + 1) {
        if !is_prime(p as u64) {
            continue;
        }
        let mut t = 2;
        loop {
            let order = (p as u64).checked_pow(t).unwrap_or(u64::MAX);
            if order > max_order {
                break;
            }
            push(
                format!("E{order}"),
                elementary_abelian(p, t)?,
                Provenance::ElementaryAbelian(p, t),
                &mut base,
            );
            t += 1;
        }
    }
    // m ≥ 3: D1 and D2 duplicate C2 and E4. Names are order-based.
    for m in 3..=(max_order / 2).min(u32::MAX as u64) as u32 {
        if 2 * m as u64 <= max_order {
            push(
                format!("D{}", 2 * m),
                dihedral(m)?,
                Provenance::Dihedral(m),
                &mut base,
            );
        }
    }
    for n in 3..=4u32 {
        let order: u64 = (1..=n as u64).product();
        if order <= max_order {
            push(format!("S{n}"), symmetric(n)?, Provenance::Symmetric(n), &mut base);
        }
    }
    for n in 4..=5u32 {
        let order: u64 = (1..=n as u64).product::<u64>() / 2;
        if order <= max_order {
            push(
                format!("A{n}"),
                alternating(n)?,
                Provenance::Alternating(n),
                &mut base,
            );
        }
    }
    if 8 <= max_order {
        push("Q8".into(), quaternion8(), Provenance::Quaternion, &mut base);
    }
    for (n, m, k) in [(5u32, 4u32, 2u32), (7, 3, 2), (7, 6, 3), (3, 4, 2)] {
        if (n * m) as u64 <= max_order {
            push(
                format!("C{n}:C{m}"),
                cyclic_semidirect(n, m, k)?,
                Provenance::CyclicSemidirect { n, m, k },
                &mut base,
            );
        }
    }

    let mut catalog = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            let (a, b) = (&base[i], &base[j]);
            if a.group.order() < 2 || b.group.order() < 2 {
                continue;
            }
            if a.group.order() * b.group.order() > max_order {
                continue;
            }
            catalog.push(CatalogEntry {
                name: format!("{}x{}", a.name, b.name),
                group: direct_product(&a.group, &b.group)?,
                provenance: Provenance::Product(
                    Box::new(a.provenance.clone()),
                    Box::new(b.provenance.clone()),
                ),
            });
        }
    }
    Ok(catalog)
}

// ---------------------------------------------------------------------------
// Generator file format
// ---------------------------------------------------------------------------

/// Renders a group in the line-oriented generator format: a `degree N`
/// header, then one generator per line in cycle notation. `#` begins a
/// comment.
pub fn render_group_file(group: &Group) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_cycle_string());
        out.push('\n');
    }
    out
}

/// Parses the generator file format. Errors carry 1-based line numbers.
pub fn parse_group_file(text: &str) -> Result<Group> {
    let mut degree: Option<usize> = None;
    let mut gens: Vec<Perm> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let rest = line.strip_prefix("degree").ok_or(Error::FileFormat {
                    line: lineno + 1,
                    reason: "expected `degree N` header".into(),
                })?;
                let n: usize = rest.trim().parse().map_err(|_| Error::FileFormat {
                    line: lineno + 1,
                    reason: format!("bad degree {rest:?}"),
                })?;
                if n == 0 {
                    return Err(Error::FileFormat {
                        line: lineno + 1,
                        reason: "degree must be positive".into(),
                    });
                }
                degree = Some(n);
            }
            Some(n) => {
                let p = parse_cycles(line, n).map_err(|e| Error::FileFormat {
                    line: lineno + 1,
                    reason: e.to_string(),
                })?;
                gens.push(p);
            }
        }
    }
    let degree = degree.ok_or(Error::FileFormat {
        line: 1,
        reason: "missing `degree N` header".into(),
    })?;
    Group::from_generators(gens, degree)
}

pub fn save_group(entry: &CatalogEntry, path: &Path) -> Result<()> {
    let mut text = format!("# {}\n", entry.name);
    text.push_str(&render_group_file(&entry.group));
    fs::write(path, text)?;
    Ok(())
}

pub fn load_group(path: &Path) -> Result<CatalogEntry> {
    let text = fs::read_to_string(path)?;
    let group = parse_group_file(&text)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(CatalogEntry {
        name,
        group,
        provenance: Provenance::File(path.display().to_string()),
    })
}

/// Writes a plain-text manifest of `name → file` lines.
pub fn write_manifest(entries: &[(String, String)], path: &Path) -> Result<()> {
    let mut text = String::new();
    for (name, file) in entries {
        text.push_str(name);
        text.push('\t');
        text.push_str(file);
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

/// Loads every group listed in a manifest; paths resolve relative to the
/// manifest location.
pub fn load_manifest(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = fs::read_to_string(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, file) = line.split_once('\t').ok_or(Error::FileFormat {
            line: lineno + 1,
            reason: "expected `name<TAB>file`".into(),
        })?;
        let mut entry = load_group(&dir.join(file))?;
        entry.name = name.to_string();
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{commutator_subgroup, generated_subgroup, generator_map_is_isomorphism};

    fn order_stats(g: &Group) -> Vec<(u64, usize)> {
        g.element_order_counts()
            .unwrap()
            .into_iter()
            .collect()
    }

    /// Brute-force centre scan independent of the structure module.
    fn brute_center_order(g: &Group) -> usize {
        let elems = g.elements().unwrap();
        elems
            .iter()
            .filter(|z| {
                elems
                    .iter()
                    .all(|x| z.compose(x).unwrap() == x.compose(z).unwrap())
            })
            .count()
    }

    #[test]
    fn cyclic_six_is_abelian_of_order_six() {
        let g = cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(brute_center_order(&g), 6);
    }

    #[test]
    fn elementary_abelian_four_has_exponent_two() {
        let g = elementary_abelian(2, 2).unwrap();
        assert_eq!(g.order(), 4);
        for e in g.elements().unwrap() {
            assert!(e.order() <= 2);
        }
        assert!(elementary_abelian(4, 2).is_err());
    }

    #[test]
    fn dihedral_four_has_center_of_order_two() {
        let g = dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(brute_center_order(&g), 2);
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(3).unwrap().order(), 3);
    }

    #[test]
    fn quaternion_is_the_quaternion_group() {
        let q = quaternion8();
        assert_eq!(q.order(), 8);
        // 1 identity, 1 involution, 6 elements of order 4
        assert_eq!(order_stats(&q), vec![(1, 1), (2, 1), (4, 6)]);
        assert_eq!(brute_center_order(&q), 2);
    }

    #[test]
    fn direct_product_of_coprime_cyclics_is_cyclic() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element_order_counts().unwrap().contains_key(&6));
    }

    #[test]
    fn direct_product_with_trivial_factor() {
        let h = symmetric(3).unwrap();
        let g = direct_product(&Group::trivial(1), &h).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(order_stats(&g), order_stats(&h));
    }

    #[test]
    fn direct_product_factors_commute() {
        let s3 = symmetric(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let g = direct_product(&s3, &c2).unwrap();
        assert_eq!(g.order(), 12);
        let left = generated_subgroup(&g, &g.generators()[..2]).unwrap();
        let right = generated_subgroup(&g, &g.generators()[2..]).unwrap();
        assert!(commutator_subgroup(&g, &left, &right).unwrap().is_trivial());
    }

    #[test]
    fn semidirect_c3_by_c2_is_s3() {
        let normal = cyclic(3).unwrap();
        let inv = normal.generators()[0].inverse();
        let spec = ActionSpec {
            normal_part: normal,
            acting_part: cyclic(2).unwrap(),
            action: vec![vec![inv]],
        };
        let sd = semidirect_product(&spec).unwrap();
        assert_eq!(sd.group.order(), 6);
        let s3 = symmetric(3).unwrap();
        assert_eq!(order_stats(&sd.group), order_stats(&s3));
        // generator map c ↦ (1 2 3), b ↦ (1 2) extends to an isomorphism
        let pairs = vec![
            (
                sd.normal_image.generators()[0].clone(),
                parse_cycles("(1 2 3)", 3).unwrap(),
            ),
            (
                sd.acting_image.generators()[0].clone(),
                parse_cycles("(1 2)", 3).unwrap(),
            ),
        ];
        assert!(generator_map_is_isomorphism(&sd.group, &s3, &pairs).unwrap());
    }

    #[test]
    fn semidirect_c5_by_c4_has_trivial_center() {
        let g = cyclic_semidirect(5, 4, 2).unwrap();
        assert_eq!(g.order(), 20);
        assert_eq!(brute_center_order(&g), 1);
    }

    #[test]
    fn semidirect_images_are_tagged_and_normal() {
        let normal = cyclic(5).unwrap();
        let gen = normal.generators()[0].clone();
        let squared = gen.compose(&gen).unwrap();
        let spec = ActionSpec {
            normal_part: normal,
            acting_part: cyclic(4).unwrap(),
            action: vec![vec![squared]],
        };
        let sd = semidirect_product(&spec).unwrap();
        assert_eq!(sd.normal_image.order(), 5);
        assert_eq!(sd.acting_image.order(), 4);
        // normal image is normal, intersection is trivial
        for x in sd.normal_image.generators() {
            for a in sd.group.generators() {
                assert!(sd.normal_image.contains(&x.conjugate(a).unwrap()));
            }
        }
        for e in sd.acting_image.elements().unwrap() {
            assert!(e.is_identity() || !sd.normal_image.contains(&e));
        }
    }

    #[test]
    fn semidirect_with_trivial_action_is_direct_product() {
        let n = cyclic(4).unwrap();
        let h = cyclic(2).unwrap();
        let spec = ActionSpec {
            normal_part: n.clone(),
            acting_part: h.clone(),
            action: vec![vec![n.generators()[0].clone()]],
        };
        let sd = semidirect_product(&spec).unwrap();
        let dp = direct_product(&n, &h).unwrap();
        assert_eq!(sd.group.order(), dp.order());
        let pairs = vec![
            (
                sd.normal_image.generators()[0].clone(),
                dp.generators()[0].clone(),
            ),
            (
                sd.acting_image.generators()[0].clone(),
                dp.generators()[1].clone(),
            ),
        ];
        assert!(generator_map_is_isomorphism(&sd.group, &dp, &pairs).unwrap());
    }

    #[test]
    fn semidirect_rejects_bad_actions() {
        // x ↦ x² is not injective on C4
        let n = cyclic(4).unwrap();
        let g = n.generators()[0].clone();
        let spec = ActionSpec {
            normal_part: n,
            acting_part: cyclic(2).unwrap(),
            action: vec![vec![g.compose(&g).unwrap()]],
        };
        assert!(matches!(
            semidirect_product(&spec),
            Err(Error::InvalidAction(_))
        ));
        // inversion has order 2, incompatible with an acting C3
        let n = cyclic(5).unwrap();
        let inv = n.generators()[0].inverse();
        let spec = ActionSpec {
            normal_part: n,
            acting_part: cyclic(3).unwrap(),
            action: vec![vec![inv]],
        };
        assert!(matches!(
            semidirect_product(&spec),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn quotient_of_s4_by_four_group_looks_like_s3() {
        let s4 = symmetric(4).unwrap();
        let v4 = generated_subgroup(
            &s4,
            &[
                parse_cycles("(1 2)(3 4)", 4).unwrap(),
                parse_cycles("(1 3)(2 4)", 4).unwrap(),
            ],
        )
        .unwrap();
        let (q, _) = quotient_as_group(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(order_stats(&q), order_stats(&symmetric(3).unwrap()));
    }

    #[test]
    fn quotient_by_trivial_subgroup_is_isomorphic_copy() {
        let g = symmetric(3).unwrap();
        let (q, proj) = quotient_as_group(&g, &Group::trivial(3)).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(order_stats(&q), order_stats(&g));
        // projection is injective here
        let img_a = proj.apply(&g.generators()[0]).unwrap();
        let img_b = proj.apply(&g.generators()[1]).unwrap();
        assert_ne!(img_a, img_b);
    }

    #[test]
    fn quotient_of_c6_by_c2() {
        let c6 = cyclic(6).unwrap();
        let g = c6.generators()[0].clone();
        let cube = g.compose(&g).unwrap().compose(&g).unwrap();
        let c2 = generated_subgroup(&c6, &[cube]).unwrap();
        assert_eq!(c2.order(), 2);
        let (q, proj) = quotient_as_group(&c6, &c2).unwrap();
        assert_eq!(q.order(), 3);
        // kernel of the projection is exactly N
        for e in c6.elements().unwrap() {
            let image_is_identity = proj.apply(&e).unwrap().is_identity();
            assert_eq!(image_is_identity, c2.contains(&e));
        }
    }

    #[test]
    fn quotient_rejects_non_normal_subgroups() {
        let s3 = symmetric(3).unwrap();
        let c2 = generated_subgroup(&s3, &[parse_cycles("(1 2)", 3).unwrap()]).unwrap();
        assert!(matches!(
            quotient_as_group(&s3, &c2),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn projection_is_a_homomorphism_on_generator_pairs() {
        let s4 = symmetric(4).unwrap();
        let v4 = generated_subgroup(
            &s4,
            &[
                parse_cycles("(1 2)(3 4)", 4).unwrap(),
                parse_cycles("(1 3)(2 4)", 4).unwrap(),
            ],
        )
        .unwrap();
        let (_, proj) = quotient_as_group(&s4, &v4).unwrap();
        for a in s4.generators() {
            for b in s4.generators() {
                let lhs = proj.apply(&a.compose(b).unwrap()).unwrap();
                let rhs = proj.apply(a).unwrap().compose(&proj.apply(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn catalog_respects_bound_and_contents() {
        let catalog = standard_catalog(6).unwrap();
        let names: Vec<&str> = catalog.iter().map(|e| e.name.as_str()).collect();
        for want in ["C1", "C2", "C3", "C4", "C5", "C6", "E4", "S3", "D6"] {
            assert!(names.contains(&want), "missing {want}");
        }
        for entry in &catalog {
            assert!(entry.group.order() <= 6, "{} too big", entry.name);
        }
    }

    #[test]
    fn catalog_at_sixty_contains_a5_and_frobenius_groups() {
        let catalog = standard_catalog(60).unwrap();
        let names: Vec<&str> = catalog.iter().map(|e| e.name.as_str()).collect();
        for want in ["A5", "Q8", "C5:C4", "C7:C3", "C7:C6", "C3:C4", "C2xS3", "C2xA4"] {
            assert!(names.contains(&want), "missing {want}");
        }
        let a5 = catalog.iter().find(|e| e.name == "A5").unwrap();
        assert_eq!(a5.group.order(), 60);
    }

    #[test]
    fn catalog_names_are_unique_and_deterministic() {
        let one = standard_catalog(24).unwrap();
        let two = standard_catalog(24).unwrap();
        assert_eq!(one.len(), two.len());
        for (a, b) in one.iter().zip(&two) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.group.generators(), b.group.generators());
        }
        let mut names: Vec<&String> = one.iter().map(|e| &e.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), one.len());
    }

    #[test]
    fn provenance_rebuild_matches_order_statistics() {
        for entry in standard_catalog(24).unwrap() {
            let rebuilt = entry.provenance.rebuild().unwrap();
            assert_eq!(rebuilt.order(), entry.group.order(), "{}", entry.name);
            assert_eq!(
                order_stats(&rebuilt),
                order_stats(&entry.group),
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn group_files_round_trip() {
        for entry in standard_catalog(12).unwrap() {
            let text = render_group_file(&entry.group);
            let parsed = parse_group_file(&text).unwrap();
            assert_eq!(parsed.generators(), entry.group.generators());
            assert_eq!(parsed.degree(), entry.group.degree());
        }
    }

    #[test]
    fn parse_group_file_contents() {
        let g = parse_group_file("degree 3\n(1 2 3)\n(1 2)\n").unwrap();
        assert_eq!(g.order(), 6);
        let trivial = parse_group_file("# empty\ndegree 4\n").unwrap();
        assert_eq!(trivial.order(), 1);
        match parse_group_file("degree 3\n(1 2\n") {
            Err(Error::FileFormat { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected file format error, got {other:?}"),
        }
        assert!(parse_group_file("(1 2)\n").is_err());
    }

    #[test]
    fn save_and_load_round_trip() {
        let dir = std::env::temp_dir().join("grouplab-construct-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("s3.group");
        let entry = CatalogEntry {
            name: "S3".into(),
            group: symmetric(3).unwrap(),
            provenance: Provenance::Symmetric(3),
        };
        save_group(&entry, &path).unwrap();
        let loaded = load_group(&path).unwrap();
        assert_eq!(loaded.group.generators(), entry.group.generators());
        fs::remove_file(&path).ok();
    }
}
