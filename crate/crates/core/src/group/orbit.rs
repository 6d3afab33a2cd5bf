use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GeneratorSet, GroupError, Permutation};

/// Size of the class of central involutions of G2(4):2.
pub const CENTRAL_CLASS_SIZE: usize = 4095;

/// A conjugacy class of involutions, indexed in BFS discovery order.
///
/// `actions[g]` is the permutation induced by generator `g` on the member
/// indices, so every later orbit computation works on small integers instead
/// of full permutations.
#[derive(Clone, Debug)]
pub struct InvolutionClass {
    members: Vec<Permutation>,
    index_of: HashMap<Permutation, u32>,
    actions: Vec<Permutation>,
}

impl InvolutionClass {
    pub fn seed(&self) -> &Permutation {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn member(&self, i: u32) -> &Permutation {
        &self.members[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index_of.get(p).copied()
    }

    /// Generator actions on member indices, in generator-file order.
    pub fn actions(&self) -> &[Permutation] {
        &self.actions
    }

    pub fn commute(&self, x: u32, y: u32) -> bool {
        self.member(x).commutes_with(self.member(y))
    }

    /// Index of the product `xy`, when it is again a member.
    pub fn product(&self, x: u32, y: u32) -> Option<u32> {
        self.index_of(&self.member(x).then(self.member(y)))
    }

    /// Image of a point-index under the word `gens[w0] gens[w1] ...`.
    pub fn apply_word(&self, point: u32, word: &[usize]) -> u32 {
        word.iter().fold(point, |p, &g| self.actions[g].apply(p))
    }
}

/// Conjugation-orbit BFS, stopping early once more than `limit` elements are seen.
fn orbit_bfs(x: &Permutation, gens: &GeneratorSet, limit: usize) -> Option<Vec<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut members = vec![x.clone()];
    seen.insert(x.clone());
    let mut head = 0;
    while head < members.len() {
        let cur = members[head].clone();
        head += 1;
        for g in gens.generators() {
            let c = cur.conjugate_by(g);
            if seen.insert(c.clone()) {
                if members.len() == limit {
                    return None;
                }
                members.push(c);
            }
        }
    }
    Some(members)
}

/// Closure of `{x}` under conjugation by the generators, in first-discovery
/// order with generators applied in file order. `x` gets index 0.
pub fn conjugation_orbit(x: &Permutation, gens: &GeneratorSet) -> Result<InvolutionClass, GroupError> {
    if x.degree() != gens.degree() {
        return Err(GroupError::DegreeMismatch(x.degree(), gens.degree()));
    }
    if x.order() != 2 {
        return Err(GroupError::NotAnInvolution);
    }
    let members = orbit_bfs(x, gens, usize::MAX).expect("unbounded orbit");
    let index_of: HashMap<Permutation, u32> = members
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let actions = gens
        .generators()
        .iter()
        .map(|g| {
            let images = members
                .iter()
                .map(|m| index_of[&m.conjugate_by(g)])
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    Ok(InvolutionClass {
        members,
        index_of,
        actions,
    })
}

/// Searches a fixed-seed stream of random generator words for an involution
/// whose conjugacy class has exactly `class_size` elements.
///
/// Each word extends the previous one by a random generator; elements of even
/// order `n` contribute their `n/2`-th power.
pub fn find_involution_in_class(
    gens: &GeneratorSet,
    class_size: usize,
    word_budget: usize,
    seed: u64,
) -> Result<Permutation, GroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried: HashSet<Permutation> = HashSet::new();
    let mut w = Permutation::identity(gens.degree());
    let k = gens.generators().len();
    for _ in 0..word_budget {
        w = w.then(&gens.generators()[rng.gen_range(0..k)]);
        let n = w.order();
        if !n.is_multiple_of(2) {
            continue;
        }
        let inv = w.pow(n / 2);
        if !tried.insert(inv.clone()) {
            continue;
        }
        if let Some(orbit) = orbit_bfs(&inv, gens, class_size) {
            if orbit.len() == class_size {
                return Ok(inv);
            }
        }
    }
    Err(GroupError::BudgetExhausted(word_budget))
}

/// A 2A (central) involution of G2(4):2, recognised as the involution class
/// of size 4095.
pub fn find_central_involution(
    gens: &GeneratorSet,
    word_budget: usize,
    seed: u64,
) -> Result<Permutation, GroupError> {
    find_involution_in_class(gens, CENTRAL_CLASS_SIZE, word_budget, seed)
}

/// Orbit size of the Klein four-group `{1, x, y, xy}` under conjugation,
/// which equals `[G : N_G(<x,y>)]`.
pub fn klein_orbit_size(x: u32, y: u32, cls: &InvolutionClass) -> Result<usize, GroupError> {
    if x == y || !cls.commute(x, y) {
        return Err(GroupError::NotCommuting(x, y));
    }
    let z = cls.product(x, y).ok_or(GroupError::ProductOutsideClass(x, y))?;
    let mut start = [x, y, z];
    start.sort_unstable();
    let mut seen: HashSet<[u32; 3]> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for a in cls.actions() {
            let mut img = t.map(|p| a.apply(p));
            img.sort_unstable();
            if seen.insert(img) {
                queue.push_back(img);
            }
        }
    }
    Ok(seen.len())
}

/// Orbits of the group on ordered pairs of class members.
#[derive(Clone, Debug)]
pub struct OrbitalPartition {
    n: usize,
    class_of_pair: Vec<u16>,
    orbital_sizes: Vec<usize>,
}

impl OrbitalPartition {
    pub fn base_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn orbital(&self, x: u32, y: u32) -> u16 {
        self.class_of_pair[x as usize * self.n + y as usize]
    }

    pub fn orbital_sizes(&self) -> &[usize] {
        &self.orbital_sizes
    }

    pub fn rank(&self) -> usize {
        self.orbital_sizes.len()
    }

    /// Sizes of the suborbits at `omega`, indexed by orbital id.
    pub fn suborbit_sizes(&self, omega: u32) -> Vec<usize> {
        let mut sizes = vec![0; self.rank()];
        for y in 0..self.n as u32 {
            sizes[self.orbital(omega, y) as usize] += 1;
        }
        sizes
    }

    /// The orbital containing `(y, x)` whenever `(x, y)` lies in `orbital`.
    pub fn paired(&self, orbital: u16) -> u16 {
        let i = self
            .class_of_pair
            .iter()
            .position(|&c| c == orbital)
            .expect("orbital id out of range");
        let (x, y) = (i / self.n, i % self.n);
        self.orbital(y as u32, x as u32)
    }
}

/// BFS over ordered pairs under simultaneous conjugation. Orbital ids follow
/// discovery order scanning pairs row by row, so the diagonal is orbital 0.
pub fn pair_orbitals(cls: &InvolutionClass) -> OrbitalPartition {
    const UNSEEN: u16 = u16::MAX;
    let n = cls.len();
    let mut class_of_pair = vec![UNSEEN; n * n];
    let mut orbital_sizes = Vec::new();
    let mut stack: Vec<(u32, u32)> = Vec::new();
    for start in 0..n * n {
        if class_of_pair[start] != UNSEEN {
            continue;
        }
        let id = orbital_sizes.len() as u16;
        assert!(id < UNSEEN, "too many orbitals");
        class_of_pair[start] = id;
        let mut size = 1;
        stack.push(((start / n) as u32, (start % n) as u32));
        while let Some((x, y)) = stack.pop() {
            for a in cls.actions() {
                let (gx, gy) = (a.apply(x), a.apply(y));
                let slot = &mut class_of_pair[gx as usize * n + gy as usize];
                if *slot == UNSEEN {
                    *slot = id;
                    size += 1;
                    stack.push((gx, gy));
                }
            }
        }
        orbital_sizes.push(size);
    }
    OrbitalPartition {
        n,
        class_of_pair,
        orbital_sizes,
    }
}
