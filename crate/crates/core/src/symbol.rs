//! Global symbol interner.
//!
//! Symbols are cheap copyable ids into a process-wide table. Interning is
//! concurrency-safe; everything downstream only compares ids.

use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::RwLock;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sym(pub u32);

struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| {
    RwLock::new(Interner {
        names: Vec::new(),
        ids: HashMap::new(),
    })
});

pub fn intern(name: &str) -> Sym {
    {
        let g = INTERNER.read().unwrap();
        if let Some(&id) = g.ids.get(name) {
            return Sym(id);
        }
    }
    let mut g = INTERNER.write().unwrap();
    if let Some(&id) = g.ids.get(name) {
        return Sym(id);
    }
    let id = g.names.len() as u32;
    g.names.push(name.to_string());
    g.ids.insert(name.to_string(), id);
    Sym(id)
}

pub fn name(sym: Sym) -> String {
    INTERNER.read().unwrap().names[sym.0 as usize].clone()
}

pub fn lookup(name: &str) -> Option<Sym> {
    INTERNER.read().unwrap().ids.get(name).copied().map(Sym)
}

/// Symbol for the i-th argument slot (0-based): `z1`, `z2`, ...
pub fn slot(i: usize) -> Sym {
    intern(&format!("z{}", i + 1))
}

/// Fresh-leg symbols used transiently inside the diagonal restrictions.
pub fn leg(i: usize) -> Sym {
    intern(&format!("zleg{}", i + 1))
}

/// The auxiliary expansion symbol for Laurent work.
pub fn aux_t() -> Sym {
    intern("t_aux")
}

/// The formal variable of the L-operator series.
pub fn theta() -> Sym {
    intern("theta")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = intern("z1");
        let b = intern("z1");
        assert_eq!(a, b);
        assert_eq!(name(a), "z1");
        assert_eq!(slot(0), a);
        assert_ne!(slot(1), a);
    }

    #[test]
    fn concurrent_interning() {
        let handles: Vec<_> = (0..8)
            .map(|k| std::thread::spawn(move || intern(&format!("conc{}", k % 3))))
            .collect();
        let syms: Vec<Sym> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (i, s) in syms.iter().enumerate() {
            assert_eq!(*s, intern(&format!("conc{}", i % 3)));
        }
    }
}
