//! Betti tables and projective dimension computed in parallel over the lcm
//! lattice. Results are merged in lattice order, so output does not depend
//! on the number of workers.

use depthfn_core::betti::{betti_at, lcm_lattice_degrees};
use depthfn_core::{BettiTable, Guards, MonomialIdeal};
use rayon::prelude::*;

pub struct Engine {
    pool: Option<rayon::ThreadPool>,
    pub guards: Guards,
}

impl Engine {
    /// `jobs == 1` computes on the calling thread; `jobs == 0` uses all cores.
    pub fn new(jobs: usize, guards: Guards) -> anyhow::Result<Self> {
        let pool = if jobs == 1 { None } else { Some(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?) };
        Ok(Engine { pool, guards })
    }

    pub fn betti_table(&self, ideal: &MonomialIdeal) -> depthfn_core::Result<BettiTable> {
        let lattice = lcm_lattice_degrees(ideal, &self.guards)?;
        let compute = |a| betti_at(ideal, a, &self.guards).map(|values| (a, values));
        let strands: depthfn_core::Result<Vec<_>> = match &self.pool {
            None => lattice.iter().map(compute).collect(),
            Some(pool) => pool.install(|| lattice.par_iter().map(compute).collect()),
        };
        Ok(BettiTable::from_strands(ideal.ctx().field(), strands?))
    }

    pub fn proj_dim(&self, ideal: &MonomialIdeal) -> depthfn_core::Result<usize> {
        if ideal.is_zero() {
            return Ok(0);
        }
        Ok(self.betti_table(ideal)?.proj_dim_quotient())
    }
}
