//! Message combiners.
//!
//! A combiner must be associative and commutative: the engine folds messages
//! first inside each partition and then again at the destination's master, in
//! an order that depends on the partitioning.

use std::any::{Any, TypeId};
use std::collections::{BTreeSet, HashMap};
use std::ops::Add;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::EngineError;

pub type Combiner<M> = Arc<dyn Fn(M, M) -> M + Send + Sync>;

pub fn combiner<M>(f: impl Fn(M, M) -> M + Send + Sync + 'static) -> Combiner<M> {
    Arc::new(f)
}

pub fn sum<M: Add<Output = M> + 'static>() -> Combiner<M> {
    Arc::new(|a, b| a + b)
}

pub fn min<M: PartialOrd + 'static>() -> Combiner<M> {
    Arc::new(|a, b| if b < a { b } else { a })
}

pub fn max<M: PartialOrd + 'static>() -> Combiner<M> {
    Arc::new(|a, b| if b > a { b } else { a })
}

/// Componentwise combination of pairs.
pub fn pair<A: 'static, B: 'static>(first: Combiner<A>, second: Combiner<B>) -> Combiner<(A, B)> {
    Arc::new(move |(a1, b1), (a2, b2)| (first(a1, a2), second(b1, b2)))
}

pub fn pair_sum() -> Combiner<(f64, f64)> {
    pair(sum(), sum())
}

/// Set union keeping only the `cap` smallest elements.
pub fn set_union_capped<T: Ord + 'static>(cap: usize) -> Combiner<BTreeSet<T>> {
    Arc::new(move |mut a: BTreeSet<T>, mut b: BTreeSet<T>| {
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        a.append(&mut b);
        while a.len() > cap {
            a.pop_last();
        }
        a
    })
}

/// Concatenation. Associative but not commutative; receivers must treat the
/// result as a multiset.
pub fn concat<T: 'static>() -> Combiner<Vec<T>> {
    Arc::new(|mut a: Vec<T>, mut b: Vec<T>| {
        a.append(&mut b);
        a
    })
}

/// Message wrapper whose default combiner keeps the maximum.
#[derive(Copy, Clone, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Max<T>(pub T);

/// Message wrapper whose default combiner keeps the minimum.
#[derive(Copy, Clone, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Min<T>(pub T);

struct Entry {
    type_name: &'static str,
    combiner: Box<dyn Any + Send + Sync>,
}

/// Default combiners keyed by message type.
pub struct CombinerRegistry {
    entries: HashMap<TypeId, Entry>,
}

impl CombinerRegistry {
    pub fn empty() -> Self {
        CombinerRegistry { entries: HashMap::new() }
    }

    /// Sums for plain numbers and numeric pairs, extrema for [`Max`] and [`Min`].
    pub fn standard() -> Self {
        let mut r = CombinerRegistry::empty();
        r.register::<f64>(sum());
        r.register::<u64>(sum());
        r.register::<i64>(sum());
        r.register::<usize>(sum());
        r.register::<(f64, f64)>(pair_sum());
        r.register::<(u64, u64)>(pair(sum(), sum()));
        r.register::<Max<u64>>(max());
        r.register::<Max<i64>>(max());
        r.register::<Max<f64>>(max());
        r.register::<Min<u64>>(min());
        r.register::<Min<i64>>(min());
        r.register::<Min<f64>>(min());
        r
    }

    pub fn register<M: 'static>(&mut self, c: Combiner<M>) {
        self.entries.insert(TypeId::of::<M>(), Entry { type_name: std::any::type_name::<M>(), combiner: Box::new(c) });
    }

    pub fn get<M: 'static>(&self) -> Result<Combiner<M>, EngineError> {
        self.entries
            .get(&TypeId::of::<M>())
            .and_then(|e| e.combiner.downcast_ref::<Combiner<M>>())
            .cloned()
            .ok_or(EngineError::NoDefaultCombiner(std::any::type_name::<M>()))
    }

    pub fn type_names(&self) -> Vec<&'static str> {
        let mut names: Vec<_> = self.entries.values().map(|e| e.type_name).collect();
        names.sort_unstable();
        names
    }
}

pub(crate) fn standard_registry() -> &'static CombinerRegistry {
    static REGISTRY: OnceLock<CombinerRegistry> = OnceLock::new();
    REGISTRY.get_or_init(CombinerRegistry::standard)
}

/// Looks up the standard default combiner for `M`.
pub fn default_combiner<M: 'static>() -> Result<Combiner<M>, EngineError> {
    standard_registry().get::<M>()
}

#[inline]
pub(crate) fn fold_into<M>(slot: &mut Option<M>, msg: M, c: &Combiner<M>) {
    *slot = Some(match slot.take() {
        Some(acc) => c(acc, msg),
        None => msg,
    });
}
