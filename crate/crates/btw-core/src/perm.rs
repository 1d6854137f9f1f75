use serde::{Deserialize, Serialize};

/// A permutation of the four vertex labels {0,1,2,3} of a tetrahedron.
/// `images[i]` is the image of label `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm4 {
    images: [u8; 4],
}

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4 { images: [0, 1, 2, 3] };

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4 { images })
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(a: u8, b: u8) -> Perm4 {
        let mut images = [0u8, 1, 2, 3];
        images[a as usize] = b;
        images[b as usize] = a;
        Perm4 { images }
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    pub fn inverse(&self) -> Perm4 {
        let mut images = [0u8; 4];
        for i in 0..4 {
            images[self.images[i] as usize] = i as u8;
        }
        Perm4 { images }
    }

    /// `self.compose(other)` maps x to self(other(x)).
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut images = [0u8; 4];
        for i in 0..4 {
            images[i] = self.apply(other.apply(i as u8));
        }
        Perm4 { images }
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i8 {
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.images[i] > self.images[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All 24 permutations in lexicographic order of their image arrays.
    pub fn all() -> impl Iterator<Item = Perm4> {
        let mut perms = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Some(p) = Perm4::new([a, b, c, d]) {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        perms.into_iter()
    }

    /// Index in the lexicographic enumeration of all 24 permutations.
    pub fn index(&self) -> usize {
        let mut avail: Vec<u8> = vec![0, 1, 2, 3];
        let mut idx = 0;
        let mut fact = 6; // 3!
        for i in 0..4 {
            let pos = avail.iter().position(|&x| x == self.images[i]).unwrap();
            idx += pos * fact;
            avail.remove(pos);
            if i < 3 {
                fact /= 3 - i;
            }
        }
        idx
    }

    /// Build the permutation sending `from[i]` to `to[i]`.
    pub fn mapping(from: [u8; 4], to: [u8; 4]) -> Perm4 {
        let mut images = [0u8; 4];
        for i in 0..4 {
            images[from[i] as usize] = to[i];
        }
        Perm4::new(images).expect("mapping arguments must each be bijections")
    }
}

impl std::fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            self.images[0], self.images[1], self.images[2], self.images[3]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        for p in Perm4::all() {
            assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
            assert_eq!(p.inverse().compose(&p), Perm4::IDENTITY);
        }
    }

    #[test]
    fn sign_is_multiplicative() {
        let ps: Vec<_> = Perm4::all().collect();
        assert_eq!(ps.len(), 24);
        for p in &ps {
            for q in &ps {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        for (i, p) in Perm4::all().enumerate() {
            assert_eq!(p.index(), i);
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
        assert!(Perm4::new([0, 1, 2, 4]).is_none());
    }
}
