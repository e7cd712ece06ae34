//! The lower-bound instances: two-link heterogeneous polynomial, k-link
//! decomposable polynomial, the atomic affine pair, the uniform affine pair,
//! the unbounded example and the four-path game without a pure equilibrium.

use crate::atomic::MatrixGame;
use crate::error::{Error, Result};
use crate::model::{EdgeDelaySpec, Instance, Monomial, PolynomialDelay};

fn check_a(a: f64) -> Result<()> {
    if !(a >= 1.0) || !a.is_finite() {
        return Err(Error::BadParameter(format!(
            "a must be at least 1, got {a}"
        )));
    }
    Ok(())
}

fn check_theta(theta: u32) -> Result<()> {
    if theta < 1 {
        return Err(Error::BadParameter("theta must be at least 1".into()));
    }
    Ok(())
}

fn shared(terms: Vec<Monomial>, k: usize, constant: f64) -> Result<EdgeDelaySpec> {
    Ok(EdgeDelaySpec::shared(PolynomialDelay::new(
        k, terms, constant,
    )?))
}

/// Two parallel links with `a f_1^theta + f_2` on top (`e1`) and
/// `f_1 + a f_2^theta` below (`e2`), demands `(r, r)`.
pub fn gen_fig1(a: f64, theta: u32, r: f64) -> Result<Instance> {
    check_a(a)?;
    check_theta(theta)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::BadParameter(format!("r must be positive, got {r}")));
    }
    let top = shared(
        vec![
            Monomial::pure(2, 0, a, theta)?,
            Monomial::pure(2, 1, 1.0, 1)?,
        ],
        2,
        0.0,
    )?;
    let bottom = shared(
        vec![
            Monomial::pure(2, 0, 1.0, 1)?,
            Monomial::pure(2, 1, a, theta)?,
        ],
        2,
        0.0,
    )?;
    Instance::builder()
        .nodes(["s", "t"])
        .edge("e1", "s", "t", top)
        .edge("e2", "s", "t", bottom)
        .commodity("s", "t", r)
        .commodity("s", "t", r)
        .build()
}

/// `k` parallel links; link `e_i` carries `sum_j f_j^theta + (a - 1) f_i^theta`
/// and every commodity has unit demand.
pub fn gen_fig2(k: usize, theta: u32, a: f64) -> Result<Instance> {
    if k < 2 {
        return Err(Error::BadParameter(format!(
            "k must be at least 2, got {k}"
        )));
    }
    check_theta(theta)?;
    check_a(a)?;
    let mut builder = Instance::builder().nodes(["s", "t"]);
    for i in 0..k {
        let terms = (0..k)
            .map(|j| Monomial::pure(k, j, if i == j { a } else { 1.0 }, theta))
            .collect::<Result<Vec<_>>>()?;
        builder = builder.edge(format!("e{}", i + 1), "s", "t", shared(terms, k, 0.0)?);
    }
    for _ in 0..k {
        builder = builder.commodity("s", "t", 1.0);
    }
    builder.build()
}

/// Top link `e` with `f_1 + a f_2`, bottom link `h` with `a f_1 + f_2`,
/// unit demands.
pub fn gen_fig4(a: f64) -> Result<Instance> {
    check_a(a)?;
    Instance::builder()
        .nodes(["s", "t"])
        .edge(
            "e",
            "s",
            "t",
            EdgeDelaySpec::shared(PolynomialDelay::affine(&[1.0, a], 0.0)?),
        )
        .edge(
            "h",
            "s",
            "t",
            EdgeDelaySpec::shared(PolynomialDelay::affine(&[a, 1.0], 0.0)?),
        )
        .commodity("s", "t", 1.0)
        .commodity("s", "t", 1.0)
        .build()
}

/// Uniform affine pair: top link `e` with `a f_1 + f_2 + a`, bottom link `h`
/// with `a f_1 + f_2`, demands `(1, sqrt(a))`.
pub fn gen_fig6(a: f64) -> Result<Instance> {
    check_a(a)?;
    Instance::builder()
        .nodes(["s", "t"])
        .edge(
            "e",
            "s",
            "t",
            EdgeDelaySpec::shared(PolynomialDelay::affine(&[a, 1.0], a)?),
        )
        .edge(
            "h",
            "s",
            "t",
            EdgeDelaySpec::shared(PolynomialDelay::affine(&[a, 1.0], 0.0)?),
        )
        .commodity("s", "t", 1.0)
        .commodity("s", "t", a.sqrt())
        .build()
}

/// Top link `e` with `f_1 f_2 + f_2^2`, bottom link `h` with
/// `f_1 f_2 + f_1^2`, unit demands. The optimum costs zero.
pub fn gen_unbounded() -> Result<Instance> {
    let cross = || Monomial::new(1.0, vec![1, 1]);
    Instance::builder()
        .nodes(["s", "t"])
        .edge(
            "e",
            "s",
            "t",
            shared(vec![cross()?, Monomial::pure(2, 1, 1.0, 2)?], 2, 0.0)?,
        )
        .edge(
            "h",
            "s",
            "t",
            shared(vec![cross()?, Monomial::pure(2, 0, 1.0, 2)?], 2, 0.0)?,
        )
        .commodity("s", "t", 1.0)
        .commodity("s", "t", 1.0)
        .build()
}

/// The two-user game over paths `P1..P4` (user 1) and `P2, P4` (user 2)
/// with the tabulated delay pairs. User 2 never takes `P1` or `P3`.
pub fn gen_table3() -> MatrixGame {
    // (user 1 path, user 2 path, user 1 delay, user 2 delay)
    const TABLE: [(usize, usize, f64, f64); 8] = [
        (3, 2, 9.0, 23.0),
        (3, 4, 15.0, 22.0),
        (1, 4, 12.0, 21.0),
        (1, 2, 12.0, 20.0),
        (4, 2, 10.0, 20.0),
        (2, 4, 17.0, 21.0),
        (2, 2, 25.0, 25.0),
        (4, 4, 24.0, 24.0),
    ];
    let user1 = ["P1", "P2", "P3", "P4"];
    let user2 = ["P2", "P4"];
    let mut delays = vec![vec![[0.0; 2]; user2.len()]; user1.len()];
    for (p, q, d1, d2) in TABLE {
        let col = if q == 2 { 0 } else { 1 };
        delays[p - 1][col] = [d1, d2];
    }
    MatrixGame::two_player(
        user1.iter().map(|s| s.to_string()).collect(),
        user2.iter().map(|s| s.to_string()).collect(),
        delays,
    )
    .expect("every profile of the table is filled")
}

/// The four-node network `s, u, v, t` with edges `s->t`, `s->u`, `u->t`,
/// `u->v`, `v->t`, `s->v` (ids `e1..e6` in that order) and two unit
/// commodities from `s` to `t`. Its paths enumerate as
/// `P1 = {e1}`, `P2 = {e2, e3}`, `P3 = {e2, e4, e5}`, `P4 = {e6, e5}`.
///
/// The delays are caller supplied; the tabulated game is not known to have
/// a realization on this network.
pub fn gen_fig3_network(delays: [EdgeDelaySpec; 6]) -> Result<Instance> {
    let [st, su, ut, uv, vt, sv] = delays;
    Instance::builder()
        .nodes(["s", "u", "v", "t"])
        .edge("e1", "s", "t", st)
        .edge("e2", "s", "u", su)
        .edge("e3", "u", "t", ut)
        .edge("e4", "u", "v", uv)
        .edge("e5", "v", "t", vt)
        .edge("e6", "s", "v", sv)
        .commodity("s", "t", 1.0)
        .commodity("s", "t", 1.0)
        .build()
}
