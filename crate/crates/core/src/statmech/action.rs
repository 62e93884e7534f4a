use super::transfer::suzuki_coefficients;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, Real};

/// Ising spins on an `M × n` grid (Trotter slices by sites), periodic in both
/// directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinConfiguration {
    slices: usize,
    sites: usize,
    /// Row-major by slice.
    spins: Vec<i8>,
}

impl SpinConfiguration {
    /// Rows are the slices `0..M`; slice `M` is identified with slice 0.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let slices = rows.len();
        let sites = rows.first().map_or(0, Vec::len);
        if slices == 0 || sites == 0 {
            return Err(Error::param("config", "grid must be nonempty"));
        }
        if rows.iter().any(|r| r.len() != sites) {
            return Err(Error::param("config", "rows must have equal length"));
        }
        let spins: Vec<i8> = rows.concat();
        if spins.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::param("config", "spins must be +1 or -1"));
        }
        Ok(Self { slices, sites, spins })
    }

    /// Rows `0..=M` with the closing slice written out; it must repeat slice 0.
    pub fn from_closed_rows(rows: &[Vec<i8>]) -> Result<Self> {
        match rows {
            [first, .., last] if first == last => Self::from_rows(&rows[..rows.len() - 1]),
            _ => Err(Error::NonPeriodic),
        }
    }

    pub fn all_up(slices: usize, sites: usize) -> Result<Self> {
        Self::from_rows(&vec![vec![1; sites]; slices])
    }

    /// Spin `(l, j)` is `−1` when bit `l·n + j` of `bits` is set.
    pub fn from_bits(slices: usize, sites: usize, bits: u64) -> Result<Self> {
        if slices * sites > 64 {
            return Err(Error::param("config", "at most 64 spins"));
        }
        let rows: Vec<Vec<i8>> = (0..slices)
            .map(|l| (0..sites).map(|j| if bits >> (l * sites + j) & 1 == 1 { -1 } else { 1 }).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn slices(&self) -> usize {
        self.slices
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Spin at slice `l`, site `j`, both taken periodically.
    pub fn get(&self, l: i64, j: i64) -> i8 {
        let l = l.rem_euclid(self.slices as i64) as usize;
        let j = j.rem_euclid(self.sites as i64) as usize;
        self.spins[l * self.sites + j]
    }

    /// Number of `(l, j)` with `σ_j^{(l+1)} ≠ σ_j^{(l)}`: the summed Hamming
    /// distance between consecutive slices.
    pub fn temporal_flips(&self) -> usize {
        self.count(|l, j| self.get(l + 1, j) != self.get(l, j))
    }

    /// Number of `(l, j)` with `σ_{j+1}^{(l)} ≠ σ_j^{(l)}`.
    pub fn spatial_walls(&self) -> usize {
        self.count(|l, j| self.get(l, j + 1) != self.get(l, j))
    }

    fn count(&self, pred: impl Fn(i64, i64) -> bool) -> usize {
        let mut n = 0;
        for l in 0..self.slices as i64 {
            for j in 0..self.sites as i64 {
                n += usize::from(pred(l, j));
            }
        }
        n
    }
}

/// Euclidean action of a grid configuration, split into its parts.
///
/// The weight of the configuration is `exp(log_prefactor + offset − value())`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanAction<T> {
    /// `Σ (h′/2)(σ^{(l+1)} − σ^{(l)})²`.
    pub temporal: T,
    /// `Σ (ΔτJ/2)(σ_j − σ_{j+1})²`.
    pub spatial: T,
    /// `nM(h′ + ΔτJ)`, the constant dropped by the squared-difference form.
    pub offset: T,
    /// `nM ln C`.
    pub log_prefactor: T,
    pub temporal_flips: usize,
    pub spatial_walls: usize,
}

impl<T: Real> EuclideanAction<T> {
    pub fn value(&self) -> T {
        self.temporal + self.spatial
    }

    /// Boltzmann weight `C^{nM} e^{offset − 𝒮}`.
    pub fn weight(&self) -> T {
        (self.log_prefactor + self.offset - self.value()).exp()
    }
}

/// Action of a transverse-field Ising chain configuration after slicing
/// `Tr(e^{ΔτhΣX} e^{ΔτJΣZZ})^M`.
pub fn tfim_euclidean_action<T: Real>(config: &SpinConfiguration, h: T, j: T, dtau: T) -> Result<EuclideanAction<T>> {
    let (h_prime, c) = suzuki_coefficients(h, dtau)?;
    let flips = config.temporal_flips();
    let walls = config.spatial_walls();
    let two = T::lit(2.0);
    let cells = from_usize::<T>(config.slices() * config.sites());
    Ok(EuclideanAction {
        temporal: two * h_prime * from_usize::<T>(flips),
        spatial: two * dtau * j * from_usize::<T>(walls),
        offset: cells * (h_prime + dtau * j),
        log_prefactor: cells * c.ln(),
        temporal_flips: flips,
        spatial_walls: walls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_up_has_zero_action() {
        let a = tfim_euclidean_action(&SpinConfiguration::all_up(4, 3).unwrap(), 1.0f64, 0.5, 0.1).unwrap();
        assert_eq!(a.temporal, 0.0);
        assert_eq!(a.spatial, 0.0);
    }

    #[test]
    fn single_flip() {
        let mut rows = vec![vec![1i8; 5]; 6];
        rows[2][3] = -1;
        let c = SpinConfiguration::from_rows(&rows).unwrap();
        let (h, j, dt) = (0.8f64, 0.6, 0.25);
        let a = tfim_euclidean_action(&c, h, j, dt).unwrap();
        let hp = suzuki_coefficients(h, dt).unwrap().0;
        assert!((a.temporal - 4.0 * hp).abs() < 1e-14);
        assert!((a.spatial - 4.0 * dt * j).abs() < 1e-14);
        assert_eq!((a.temporal_flips, a.spatial_walls), (2, 2));
    }

    #[test]
    fn periodicity_checks() {
        let open = vec![vec![1i8, -1], vec![1, 1], vec![-1, -1]];
        assert_eq!(SpinConfiguration::from_closed_rows(&open), Err(Error::NonPeriodic));
        let closed = vec![vec![1i8, -1], vec![1, 1], vec![1, -1]];
        let c = SpinConfiguration::from_closed_rows(&closed).unwrap();
        assert_eq!(c.slices(), 2);
        assert_eq!(c.get(2, 3), c.get(0, 1));
        assert!(SpinConfiguration::from_rows(&[vec![0i8]]).is_err());
    }
}
