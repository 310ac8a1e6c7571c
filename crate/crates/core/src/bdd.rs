//! Minimal reduced ordered BDDs, enough for canonical progression states.

use std::collections::HashMap;

pub(crate) type BddRef = u32;

pub(crate) const FALSE: BddRef = 0;
pub(crate) const TRUE: BddRef = 1;

const TERMINAL: u32 = u32::MAX;

#[derive(Default)]
pub(crate) struct Manager {
    // (var, lo, hi); the two terminals occupy slots 0 and 1
    nodes: Vec<(u32, BddRef, BddRef)>,
    unique: HashMap<(u32, BddRef, BddRef), BddRef>,
    ite_cache: HashMap<(BddRef, BddRef, BddRef), BddRef>,
}

impl Manager {
    pub(crate) fn new() -> Self {
        Manager {
            nodes: vec![(TERMINAL, FALSE, FALSE), (TERMINAL, TRUE, TRUE)],
            ..Default::default()
        }
    }

    fn mk(&mut self, var: u32, lo: BddRef, hi: BddRef) -> BddRef {
        if lo == hi {
            return lo;
        }
        if let Some(&r) = self.unique.get(&(var, lo, hi)) {
            return r;
        }
        let r = self.nodes.len() as BddRef;
        self.nodes.push((var, lo, hi));
        self.unique.insert((var, lo, hi), r);
        r
    }

    pub(crate) fn var(&mut self, v: u32) -> BddRef {
        self.mk(v, FALSE, TRUE)
    }

    fn top(&self, f: BddRef) -> u32 {
        self.nodes[f as usize].0
    }

    fn cofactors(&self, f: BddRef, v: u32) -> (BddRef, BddRef) {
        let (var, lo, hi) = self.nodes[f as usize];
        if var == v {
            (lo, hi)
        } else {
            (f, f)
        }
    }

    pub(crate) fn ite(&mut self, f: BddRef, g: BddRef, h: BddRef) -> BddRef {
        match (f, g, h) {
            (TRUE, _, _) => return g,
            (FALSE, _, _) => return h,
            (_, TRUE, FALSE) => return f,
            _ if g == h => return g,
            _ => {}
        }
        if let Some(&r) = self.ite_cache.get(&(f, g, h)) {
            return r;
        }
        let v = self.top(f).min(self.top(g)).min(self.top(h));
        let (f0, f1) = self.cofactors(f, v);
        let (g0, g1) = self.cofactors(g, v);
        let (h0, h1) = self.cofactors(h, v);
        let lo = self.ite(f0, g0, h0);
        let hi = self.ite(f1, g1, h1);
        let r = self.mk(v, lo, hi);
        self.ite_cache.insert((f, g, h), r);
        r
    }

    pub(crate) fn and(&mut self, f: BddRef, g: BddRef) -> BddRef {
        self.ite(f, g, FALSE)
    }

    pub(crate) fn or(&mut self, f: BddRef, g: BddRef) -> BddRef {
        self.ite(f, TRUE, g)
    }

    /// Replaces every variable `v` of `f` by `sub(v)` simultaneously.
    pub(crate) fn substitute(&mut self, f: BddRef, sub: &mut dyn FnMut(&mut Self, u32) -> BddRef) -> BddRef {
        let mut memo = HashMap::new();
        self.substitute_rec(f, sub, &mut memo)
    }

    fn substitute_rec(
        &mut self,
        f: BddRef,
        sub: &mut dyn FnMut(&mut Self, u32) -> BddRef,
        memo: &mut HashMap<BddRef, BddRef>,
    ) -> BddRef {
        if f == TRUE || f == FALSE {
            return f;
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let (v, lo, hi) = self.nodes[f as usize];
        let lo = self.substitute_rec(lo, sub, memo);
        let hi = self.substitute_rec(hi, sub, memo);
        let s = sub(self, v);
        let r = self.ite(s, hi, lo);
        memo.insert(f, r);
        r
    }

    pub(crate) fn eval(&self, mut f: BddRef, assign: impl Fn(u32) -> bool) -> bool {
        while f != TRUE && f != FALSE {
            let (v, lo, hi) = self.nodes[f as usize];
            f = if assign(v) { hi } else { lo };
        }
        f == TRUE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let mut m = Manager::new();
        let (a, b) = (m.var(0), m.var(1));
        let ab = m.and(a, b);
        let ba = m.and(b, a);
        assert_eq!(ab, ba);
        let na = m.ite(a, FALSE, TRUE);
        let taut = m.or(a, na);
        assert_eq!(taut, TRUE);
        assert!(m.eval(ab, |_| true));
        assert!(!m.eval(ab, |v| v == 0));
    }

    #[test]
    fn substitution() {
        let mut m = Manager::new();
        let (a, b, c) = (m.var(0), m.var(1), m.var(2));
        let f = m.or(a, b);
        // a := c, b := false
        let g = m.substitute(f, &mut |m, v| if v == 0 { m.var(2) } else { FALSE });
        assert_eq!(g, c);
    }
}
