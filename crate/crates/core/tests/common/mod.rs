//! Faithful representations of the test groups, independent of the library's normal forms.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use relrips::word::GeneratorSymbol;
use relrips::Word;

pub trait Rep {
    type E: Clone + Eq + std::hash::Hash;
    fn id(&self) -> Self::E;
    fn generator(&self, s: GeneratorSymbol) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn inv(&self, x: &Self::E) -> Self::E;
    fn act(&self, x: &Self::E, s: GeneratorSymbol) -> Self::E {
        self.mul(x, &self.generator(s))
    }
    fn eval(&self, w: &Word) -> Self::E {
        w.0.iter().fold(self.id(), |x, &s| self.act(&x, s))
    }
}

/// D∞ as affine maps `x ↦ sx + t` of Z: `a(x) = -x`, `b(x) = 2 - x`.
pub struct Affine;
impl Rep for Affine {
    type E = (i64, i64);
    fn id(&self) -> (i64, i64) {
        (1, 0)
    }
    fn generator(&self, g: GeneratorSymbol) -> (i64, i64) {
        if g.index == 0 {
            (-1, 0)
        } else {
            (-1, 2)
        }
    }
    fn mul(&self, &(s, t): &(i64, i64), &(gs, gt): &(i64, i64)) -> (i64, i64) {
        (s * gs, s * gt + t)
    }
    fn inv(&self, &(s, t): &(i64, i64)) -> (i64, i64) {
        (s, -s * t)
    }
}

/// Z/2 * Z/3 as PSL(2, Z) with `a = S` and `b = ST`, matrices up to sign.
pub struct Modular;
pub type M = [i64; 4];
fn projective(m: M) -> M {
    let first = m.iter().copied().find(|&v| v != 0).unwrap();
    if first < 0 {
        m.map(|v| -v)
    } else {
        m
    }
}
impl Rep for Modular {
    type E = M;
    fn id(&self) -> M {
        [1, 0, 0, 1]
    }
    fn generator(&self, g: GeneratorSymbol) -> M {
        match (g.index, g.inverse) {
            (0, _) => [0, 1, -1, 0],
            (1, false) => [0, -1, 1, 1],
            (1, true) => [1, 1, -1, 0],
            _ => unreachable!(),
        }
    }
    fn mul(&self, x: &M, y: &M) -> M {
        projective([
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ])
    }
    fn inv(&self, x: &M) -> M {
        projective([x[3], -x[1], -x[2], x[0]])
    }
}

/// Z^2 by exponent sums.
pub struct Lattice;
impl Rep for Lattice {
    type E = (i64, i64);
    fn id(&self) -> (i64, i64) {
        (0, 0)
    }
    fn generator(&self, g: GeneratorSymbol) -> (i64, i64) {
        let d = if g.inverse { -1 } else { 1 };
        if g.index == 0 {
            (d, 0)
        } else {
            (0, d)
        }
    }
    fn mul(&self, x: &(i64, i64), y: &(i64, i64)) -> (i64, i64) {
        (x.0 + y.0, x.1 + y.1)
    }
    fn inv(&self, x: &(i64, i64)) -> (i64, i64) {
        (-x.0, -x.1)
    }
}

/// F_n by free reduction of letter strings.
pub struct FreeStrings;
impl Rep for FreeStrings {
    type E = Vec<(u16, bool)>;
    fn id(&self) -> Self::E {
        Vec::new()
    }
    fn generator(&self, g: GeneratorSymbol) -> Self::E {
        vec![(g.index, g.inverse)]
    }
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E {
        let mut out = x.clone();
        for &(i, inv) in y {
            if out.last() == Some(&(i, !inv)) {
                out.pop();
            } else {
                out.push((i, inv));
            }
        }
        out
    }
    fn inv(&self, x: &Self::E) -> Self::E {
        x.iter().rev().map(|&(i, inv)| (i, !inv)).collect()
    }
}

/// Word lengths of all elements up to `radius`, by BFS in the representation.
pub fn word_lengths<R: Rep>(rep: &R, symbols: &[GeneratorSymbol], radius: u32) -> HashMap<R::E, u32> {
    let mut seen: HashMap<R::E, u32> = HashMap::from([(rep.id(), 0)]);
    let mut queue = VecDeque::from([rep.id()]);
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        if d == radius {
            continue;
        }
        for &s in symbols {
            let y = rep.act(&x, s);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    seen
}
