//! Internal direct products `M = M₁ × … × M_l` with an acting element `g`
//! and a `g`-invariant subgroup `N ≤ M`.

use alloc::vec;
use alloc::vec::Vec;

use crate::classes::conjugacy_classes;
use crate::error::{Error, Result};
use crate::group::{intersection, Elem, Group, Subgroup};
use crate::quotient::Quotient;

pub struct ProductDecomposition<'a, G: Group> {
    ambient: &'a G,
    factors: Vec<Subgroup>,
    g: Elem,
    n: Subgroup,
    product: Subgroup,
    lemma_group: Subgroup,
    coset_order: u64,
    components: Vec<Vec<Elem>>,
    factor_perm: Option<Vec<usize>>,
}

impl<'a, G: Group> ProductDecomposition<'a, G> {
    /// Validates the direct-product structure and `N^g = N`.
    pub fn new(ambient: &'a G, factors: Vec<Subgroup>, g: Elem, n: Subgroup) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("a decomposition needs at least one factor".into()));
        }
        for (i, a) in factors.iter().enumerate() {
            for b in &factors[i + 1..] {
                let commute = a.generators().iter().all(|&x| b.generators().iter().all(|&y| ambient.commutes(x, y)));
                if !commute {
                    return Err(Error::InvalidInput("factors do not commute elementwise".into()));
                }
            }
        }
        let gens: Vec<Elem> = factors.iter().flat_map(|f| f.generators().iter().copied()).collect();
        let product = Subgroup::generated(ambient, &gens);
        let expected: usize = factors.iter().map(|f| f.order()).product();
        if product.order() != expected {
            return Err(Error::InvalidInput("factors intersect nontrivially".into()));
        }
        if !n.is_subgroup_of(&product) {
            return Err(Error::NotASubgroup("N is not contained in M".into()));
        }
        if !n.normalized_by(ambient, g) {
            return Err(Error::NotInvariant);
        }
        let mut lemma_gens = gens.clone();
        lemma_gens.push(g);
        let lemma_group = Subgroup::generated(ambient, &lemma_gens);
        if !product.normalized_by(ambient, g) {
            return Err(Error::NotNormal);
        }
        let coset_order = (lemma_group.order() / product.order()) as u64;

        let mut components = vec![Vec::new(); product.order()];
        let mut tuple = vec![ambient.identity(); factors.len()];
        fill_components(ambient, &factors, &product, 0, ambient.identity(), &mut tuple, &mut components);

        let factor_perm = factors
            .iter()
            .map(|f| {
                let image = f.conjugate(ambient, g);
                factors.iter().position(|h| h.members() == image.members())
            })
            .collect::<Option<Vec<usize>>>();

        Ok(Self { ambient, factors, g, n, product, lemma_group, coset_order, components, factor_perm })
    }

    pub fn ambient(&self) -> &'a G {
        self.ambient
    }

    pub fn factors(&self) -> &[Subgroup] {
        &self.factors
    }

    pub fn g(&self) -> Elem {
        self.g
    }

    pub fn n(&self) -> &Subgroup {
        &self.n
    }

    /// `M`.
    pub fn product(&self) -> &Subgroup {
        &self.product
    }

    /// `⟨M, g⟩`, the group `G` of the product lemmas.
    pub fn lemma_group(&self) -> &Subgroup {
        &self.lemma_group
    }

    /// `m = |⟨M, g⟩ / M|`.
    pub fn coset_order(&self) -> u64 {
        self.coset_order
    }

    /// Components `(x₁, …, x_l)` of `x ∈ M`.
    pub fn components(&self, x: Elem) -> &[Elem] {
        &self.components[self.product.local_index(x).expect("element of M") as usize]
    }

    /// `i ↦ j` with `M_i^g = M_j`, when `g` permutes the factors.
    pub fn factor_permutation(&self) -> Option<&[usize]> {
        self.factor_perm.as_deref()
    }

    /// Whether every factor is normalized by `g` (and hence normal in `⟨M, g⟩`).
    pub fn factors_normal(&self) -> bool {
        self.factors.iter().all(|f| f.normalized_by(self.ambient, self.g))
    }

    /// Whether `g` permutes the factors in a single cycle.
    pub fn is_transitive(&self) -> bool {
        let Some(perm) = &self.factor_perm else { return false };
        let mut i = 0;
        for step in 1..=perm.len() {
            i = perm[i];
            if i == 0 {
                return step == perm.len();
            }
        }
        false
    }

    /// `{xᵢ : x ∈ N}`; for `i = 0` this is the subgroup `L` of the prime-factor lemma.
    pub fn projection(&self, i: usize) -> Subgroup {
        let mut members: Vec<Elem> = self.n.members().iter().map(|&x| self.components(x)[i]).collect();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_members_unchecked(self.ambient, members)
    }

    /// `N₀ = M₁ ∩ N`.
    pub fn n0(&self) -> Subgroup {
        intersection(self.ambient, &self.factors[0], &self.n)
    }

    /// `N₁ = ∏ N₀^{gⁱ}`, together with the factor orders.
    pub fn n1(&self) -> (Subgroup, Vec<usize>) {
        let n0 = self.n0();
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        let mut cur = n0;
        for _ in 0..self.factors.len() {
            gens.extend_from_slice(cur.generators());
            orders.push(cur.order());
            cur = cur.conjugate(self.ambient, self.g);
        }
        (Subgroup::generated(self.ambient, &gens), orders)
    }

    /// `k(N/N₁)`.
    pub fn k_j(&self) -> Result<usize> {
        let (n1, _) = self.n1();
        let view = self.n.view(self.ambient);
        let rel = n1.relative_to(self.ambient, &self.n)?;
        let q = Quotient::new(&view, &rel)?;
        Ok(conjugacy_classes(&q).len())
    }
}

fn fill_components<G: Group>(
    g: &G,
    factors: &[Subgroup],
    product: &Subgroup,
    depth: usize,
    acc: Elem,
    tuple: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    if depth == factors.len() {
        out[product.local_index(acc).expect("product lies in M") as usize] = tuple.clone();
        return;
    }
    for &x in factors[depth].members() {
        tuple[depth] = x;
        fill_components(g, factors, product, depth + 1, g.mul(acc, x), tuple, out);
    }
}
