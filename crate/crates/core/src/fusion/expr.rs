use crate::error::Result;
use crate::fusion::tree::{TreeVector, Word};
use crate::fusion::FusionSystem;
use crate::scalar::{Real, C};

/// A morphism written in sector notation.
///
/// `LeftTensor(ρ, X)` is `ρ(X)`; the identity on trailing factors that the
/// notation leaves implicit must be written with `RightTensor`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<T: Real> {
    Identity(Word),
    /// `v_{ab}^{c,μ} : c → a⊗b`.
    Vertex {
        a: usize,
        b: usize,
        c: usize,
        mult: usize,
    },
    /// `R_ρ`.
    Cup(usize),
    /// `R̄_ρ`.
    CupBar(usize),
    Literal(TreeVector<T>),
    Adjoint(Box<Expr<T>>),
    /// `f ∘ g`.
    Compose(Box<Expr<T>>, Box<Expr<T>>),
    LeftTensor(usize, Box<Expr<T>>),
    RightTensor(Box<Expr<T>>, usize),
    Tensor(Box<Expr<T>>, Box<Expr<T>>),
    Scale(C<T>, Box<Expr<T>>),
}

impl<T: Real> Expr<T> {
    pub fn adjoint(self) -> Self {
        Expr::Adjoint(Box::new(self))
    }

    pub fn then(self, after: Self) -> Self {
        Expr::Compose(Box::new(after), Box::new(self))
    }

    pub fn compose(self, before: Self) -> Self {
        Expr::Compose(Box::new(self), Box::new(before))
    }

    pub fn left(rho: usize, x: Self) -> Self {
        Expr::LeftTensor(rho, Box::new(x))
    }

    pub fn right(self, rho: usize) -> Self {
        Expr::RightTensor(Box::new(self), rho)
    }

    pub fn tensor(self, other: Self) -> Self {
        Expr::Tensor(Box::new(self), Box::new(other))
    }

    pub fn scale(self, s: C<T>) -> Self {
        Expr::Scale(s, Box::new(self))
    }
}

impl<T: Real> FusionSystem<T> {
    /// Evaluates an expression to its left-comb tree coefficients.
    pub fn eval(&self, expr: &Expr<T>) -> Result<TreeVector<T>> {
        Ok(match expr {
            Expr::Identity(w) => self.identity(w),
            Expr::Vertex { a, b, c, mult } => self.vertex(*a, *b, *c, *mult)?,
            Expr::Cup(rho) => self.cup(*rho).clone(),
            Expr::CupBar(rho) => self.cup_bar(*rho).clone(),
            Expr::Literal(v) => v.clone(),
            Expr::Adjoint(x) => self.eval(x)?.adjoint(),
            Expr::Compose(f, g) => self.eval(f)?.compose(&self.eval(g)?)?,
            Expr::LeftTensor(rho, x) => self.tensor_left(*rho, &self.eval(x)?)?,
            Expr::RightTensor(x, rho) => self.tensor_right(&self.eval(x)?, *rho),
            Expr::Tensor(f, g) => self.tensor(&self.eval(f)?, &self.eval(g)?)?,
            Expr::Scale(s, x) => self.eval(x)?.scale(*s),
        })
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fusion::builtins;
    use crate::scalar::c;

    fn systems() -> Vec<FusionSystem<f64>> {
        vec![
            builtins::fibonacci(),
            builtins::ising(),
            builtins::vec_omega_cyclic(3, 1),
            builtins::tambara_yamagami(3, 1, -1).unwrap(),
        ]
    }

    fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Vec<usize> {
        let len = rng.gen_range(0..=max_len);
        (0..len).map(|_| rng.gen_range(0..rank)).collect()
    }

    fn random_morphism(fs: &FusionSystem<f64>, rng: &mut ChaCha8Rng) -> TreeVector<f64> {
        let src = random_word(rng, fs.rank(), 2);
        let dst = random_word(rng, fs.rank(), 2);
        let mut v = fs.zeros(&src, &dst);
        for b in v.blocks.iter_mut() {
            for z in b.iter_mut() {
                *z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        v
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn tensor_is_associative(seed in any::<u64>(), which in 0usize..4) {
            let fs = &systems()[which];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y, z) = (random_morphism(fs, &mut rng), random_morphism(fs, &mut rng), random_morphism(fs, &mut rng));
            let a = fs.eval(&Expr::Literal(x.clone()).tensor(Expr::Literal(y.clone())).tensor(Expr::Literal(z.clone()))).unwrap();
            let b = fs.eval(&Expr::Literal(x).tensor(Expr::Literal(y).tensor(Expr::Literal(z)))).unwrap();
            prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-9);
        }

        #[test]
        fn interchange_law(seed in any::<u64>(), which in 0usize..4) {
            let fs = &systems()[which];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y) = (random_morphism(fs, &mut rng), random_morphism(fs, &mut rng));
            // (X ⊗ 1)(1 ⊗ Y) against (1 ⊗ Y)(X ⊗ 1)
            let a = fs.tensor(&x, &y).unwrap();
            let b = fs
                .tensor_left_word(&x.dst, &y)
                .unwrap()
                .compose(&fs.tensor_right_word(&x, &y.src))
                .unwrap();
            prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-9);
        }

        #[test]
        fn left_action_is_functorial(seed in any::<u64>(), which in 0usize..4) {
            let fs = &systems()[which];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_morphism(fs, &mut rng);
            let mut y = random_morphism(fs, &mut rng);
            y.dst = x.src.clone();
            y = {
                let mut w = fs.zeros(&y.src, &y.dst);
                for b in w.blocks.iter_mut() {
                    for z in b.iter_mut() {
                        *z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    }
                }
                w
            };
            let rho = rng.gen_range(0..fs.rank());
            let lhs = fs.tensor_left(rho, &x.compose(&y).unwrap()).unwrap();
            let rhs = fs.tensor_left(rho, &x).unwrap().compose(&fs.tensor_left(rho, &y).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-9);
            let adj = fs.tensor_left(rho, &x.adjoint()).unwrap();
            prop_assert!(adj.max_abs_diff(&fs.tensor_left(rho, &x).unwrap().adjoint()).unwrap() < 1e-9);
        }
    }

    #[test]
    fn identity_expression_is_unit_vector() {
        let fs = builtins::fibonacci::<f64>();
        let v = fs.eval(&Expr::Identity(vec![1])).unwrap();
        assert_eq!(v.coefficients(), vec![c(1.0, 0.0)]);
        assert_eq!(v.scalar().unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn fibonacci_zigzag_is_inverse_golden_ratio() {
        let fs = builtins::fibonacci::<f64>();
        let tau = 1;
        let e = Expr::CupBar(tau)
            .adjoint()
            .right(tau)
            .compose(Expr::left(tau, Expr::Cup(tau)));
        let z = fs.eval(&e).unwrap().scalar().unwrap();
        let want = 2.0 / (1.0 + 5f64.sqrt());
        assert!((z - c(want, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn pointed_zigzag_is_one() {
        for k in 0..4 {
            let fs = builtins::vec_omega_cyclic::<f64>(4, k);
            for rho in 0..4 {
                let e = Expr::CupBar(rho)
                    .adjoint()
                    .right(rho)
                    .compose(Expr::left(rho, Expr::Cup(rho)));
                let z = fs.eval(&e).unwrap().scalar().unwrap();
                assert!((z - c(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn composing_mismatched_types_fails() {
        let fs = builtins::ising::<f64>();
        let e = Expr::Vertex {
            a: 2,
            b: 2,
            c: 0,
            mult: 0,
        }
        .compose(Expr::Vertex {
            a: 1,
            b: 1,
            c: 0,
            mult: 0,
        });
        assert!(matches!(
            fs.eval(&e),
            Err(crate::error::Error::TypeMismatch(_))
        ));
    }
}
