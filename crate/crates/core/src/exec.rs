//! Execution strategy for the data-parallel kernels.
//!
//! Every sweep in the crate (Gram matrices, elimination row updates,
//! property suites) goes through [`Exec`]. With the `parallel` feature
//! enabled, [`Exec::Parallel`] fans work out over the rayon pool; without
//! it the parallel variant silently runs sequentially, so callers never
//! need their own `cfg` gates.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Maps `f` over `0..len`, preserving order.
    pub fn map_range<U, F>(self, len: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Applies `f` to every element in place.
    pub fn for_each_mut<T, F>(self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            items.par_iter_mut().for_each(f);
            return;
        }
        items.iter_mut().for_each(f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&xs, |x| x * x);
        let par = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(
            Exec::Sequential.map_range(17, |i| i + 1),
            Exec::Parallel.map_range(17, |i| i + 1)
        );
        let mut ys = xs.clone();
        Exec::Parallel.for_each_mut(&mut ys, |y| *y += 1);
        assert_eq!(ys[999], 1000);
    }
}
