use crate::error::{Error, Result};
use crate::model::Routing;

/// `Psi = sum_e (d(e)^2 + sum_{j in S(e)} (a_j r_j)^2)` for a uniform affine
/// network game, where `S(e)` is the set of commodities routed through `e`
/// and `d(e) = sum_{j in S(e)} a_j r_j + c(e)` is the common edge delay.
///
/// A unilateral move of commodity `i` changes `Psi` by exactly
/// `2 a_i r_i` times the change in its path delay.
pub fn potential_uniform_affine(routing: &Routing, choices: &[usize]) -> Result<f64> {
    let instance = routing.instance();
    let class = instance.classification();
    if !(class.uniform && class.affine) {
        return Err(Error::NotUniformAffine);
    }
    if choices.len() != routing.k()
        || choices
            .iter()
            .enumerate()
            .any(|(i, &c)| c >= routing.paths(i).len())
    {
        return Err(Error::InvalidProfile(format!(
            "profile {choices:?} does not match the path sets {:?}",
            routing.path_counts()
        )));
    }
    let k = routing.k();
    let mut psi = 0.0;
    for (e, edge) in instance.network().edges().iter().enumerate() {
        let delay = edge.delay().delay(0);
        let mut flows = vec![0.0; k];
        let mut squares = 0.0;
        for (j, &c) in choices.iter().enumerate() {
            if routing.paths(j)[c].contains(e) {
                let r = instance.commodity(j).demand();
                flows[j] = r;
                squares += (delay.pure_coeff(j, 1) * r).powi(2);
            }
        }
        psi += delay.eval(&flows).powi(2) + squares;
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::generators::{gen_fig4, gen_fig6};
    use crate::model::{EdgeDelaySpec, Instance, PolynomialDelay};

    fn uniform(constants: &[f64], coeffs: &[f64], demands: &[f64]) -> Routing {
        let mut builder = Instance::builder().nodes(["s", "t"]);
        for (e, &c) in constants.iter().enumerate() {
            let delay = PolynomialDelay::affine(coeffs, c).unwrap();
            builder = builder.edge(format!("e{e}"), "s", "t", EdgeDelaySpec::shared(delay));
        }
        for &r in demands {
            builder = builder.commodity("s", "t", r);
        }
        Routing::new(builder.build().unwrap()).unwrap()
    }

    #[test]
    fn shared_edge_value() {
        // d = 1 + 2 = 3, so Psi = 9 + 1 + 4 on the used edge; the idle edge
        // has constant 5 and contributes 25.
        let routing = uniform(&[0.0, 5.0], &[1.0, 2.0], &[1.0, 1.0]);
        assert_eq!(
            potential_uniform_affine(&routing, &[0, 0]).unwrap(),
            14.0 + 25.0
        );
    }

    #[test]
    fn deviation_changes_potential_by_weighted_delay_change() {
        let routing = Routing::new(gen_fig6(4.0).unwrap()).unwrap();
        let before = [0, 0];
        let after = [0, 1];
        let delays = |c: &[usize]| crate::atomic::AtomicGame::delays(&routing, c);
        let delta_psi = potential_uniform_affine(&routing, &after).unwrap()
            - potential_uniform_affine(&routing, &before).unwrap();
        // Commodity 2 moves; a_2 = 1, r_2 = 2.
        let delta_delay = delays(&after)[1] - delays(&before)[1];
        assert!((delta_psi - 2.0 * 2.0 * delta_delay).abs() < 1e-12);
    }

    #[test]
    fn non_uniform_instances_are_rejected() {
        let routing = Routing::new(gen_fig4(2.0).unwrap()).unwrap();
        assert!(matches!(
            potential_uniform_affine(&routing, &[0, 0]),
            Err(Error::NotUniformAffine)
        ));
    }
}
