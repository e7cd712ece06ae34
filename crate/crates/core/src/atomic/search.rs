use super::game::{AtomicGame, Profile};
use crate::error::{Error, Result};
use crate::nonatomic::for_each_profile;
use crate::tolerance;
use crate::Poa;

/// The best unilateral deviation of `player`, if it improves the player's
/// delay by more than the deviation tolerance. Among equally good
/// alternatives the lowest strategy index wins.
pub fn best_response<G: AtomicGame + ?Sized>(
    game: &G,
    choices: &[usize],
    player: usize,
) -> Option<(usize, f64)> {
    let current = game.delays(choices)[player];
    best_response_from(game, choices, player, current)
}

pub(crate) fn best_response_from<G: AtomicGame + ?Sized>(
    game: &G,
    choices: &[usize],
    player: usize,
    current: f64,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for s in 0..game.strategies(player) {
        let d = if s == choices[player] {
            current
        } else {
            game.deviation_delay(choices, player, s)
        };
        if best.is_none_or(|(_, b)| d < b) {
            best = Some((s, d));
        }
    }
    best.filter(|&(s, d)| s != choices[player] && d < current - tolerance::DEVIATION)
}

/// True when no player can strictly improve by switching alone.
pub fn is_pne<G: AtomicGame + ?Sized>(game: &G, profile: &Profile) -> bool {
    (0..game.players())
        .all(|i| best_response_from(game, &profile.choices, i, profile.delays[i]).is_none())
}

/// All pure Nash equilibria in lexicographic profile order, under the
/// default profile cap.
pub fn find_pne<G: AtomicGame + ?Sized>(game: &G) -> Result<Vec<Profile>> {
    find_pne_with_cap(game, tolerance::DEFAULT_PROFILE_CAP)
}

pub fn find_pne_with_cap<G: AtomicGame + ?Sized>(game: &G, cap: usize) -> Result<Vec<Profile>> {
    let mut found = Vec::new();
    for_each_checked(game, cap, |profile| {
        if is_pne(game, &profile) {
            found.push(profile);
        }
    })?;
    Ok(found)
}

/// Worst pure equilibrium against the cheapest pure profile.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicPoa {
    pub poa: Poa,
    pub worst_ne: Option<Profile>,
    /// Cheapest profile, first in lexicographic order on ties.
    pub so: Profile,
    pub equilibria: usize,
}

/// Exhaustive atomic price of anarchy. [`Poa::NoEquilibrium`] when the game
/// has no pure equilibrium; [`Poa::Unbounded`] when some profile costs
/// (numerically) nothing while an equilibrium does not.
pub fn poa_atomic<G: AtomicGame + ?Sized>(game: &G, cap: usize) -> Result<AtomicPoa> {
    let mut so: Option<Profile> = None;
    let mut worst: Option<Profile> = None;
    let mut equilibria = 0;
    for_each_checked(game, cap, |profile| {
        if is_pne(game, &profile) {
            equilibria += 1;
            if worst.as_ref().is_none_or(|w| profile.cost > w.cost) {
                worst = Some(profile.clone());
            }
        }
        if so.as_ref().is_none_or(|s| profile.cost < s.cost) {
            so = Some(profile);
        }
    })?;
    let so = so.expect("every player has a strategy");
    let total_weight: f64 = (0..game.players()).map(|i| game.weight(i)).sum();
    let poa = match &worst {
        Some(ne) => Poa::from_costs(ne.cost, so.cost, tolerance::UNBOUNDED * total_weight),
        None => Poa::NoEquilibrium,
    };
    Ok(AtomicPoa {
        poa,
        worst_ne: worst,
        so,
        equilibria,
    })
}

fn for_each_checked<G: AtomicGame + ?Sized>(
    game: &G,
    cap: usize,
    mut f: impl FnMut(Profile),
) -> Result<()> {
    let counts = game.strategy_counts();
    let count: u128 = counts.iter().map(|&c| c as u128).product();
    if count > cap as u128 {
        return Err(Error::ProfileExplosion { count, cap });
    }
    for_each_profile(&counts, |choices| {
        f(Profile::evaluate_unchecked(game, choices.to_vec()))
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::generators::{gen_fig4, gen_fig6, gen_table3};
    use crate::model::{EdgeDelaySpec, Instance, PolynomialDelay, Routing};

    #[test]
    fn tabulated_game_has_no_pure_equilibrium() {
        let game = gen_table3();
        assert!(find_pne(&game).unwrap().is_empty());
        assert_eq!(poa_atomic(&game, 100).unwrap().poa, Poa::NoEquilibrium);
    }

    #[test]
    fn anti_aligned_profiles_are_equilibria() {
        let routing = Routing::new(gen_fig4(10.0).unwrap()).unwrap();
        let pne = find_pne(&routing).unwrap();
        let choices: Vec<_> = pne.iter().map(|p| p.choices.clone()).collect();
        assert!(choices.contains(&vec![1, 0]));
        let crossed = pne.iter().find(|p| p.choices == vec![1, 0]).unwrap();
        assert_eq!(crossed.cost, 20.0);
        for p in &pne {
            assert!(is_pne(&routing, p));
        }
    }

    #[test]
    fn atomic_poa_of_the_affine_pair() {
        let routing = Routing::new(gen_fig4(10.0).unwrap()).unwrap();
        let result = poa_atomic(&routing, 100).unwrap();
        assert_eq!(result.poa, Poa::Finite(10.0));
        assert_eq!(result.so.cost, 2.0);
    }

    #[test]
    fn atomic_poa_of_the_uniform_pair() {
        let routing = Routing::new(gen_fig6(4.0).unwrap()).unwrap();
        let result = poa_atomic(&routing, 100).unwrap();
        assert_eq!(result.so.cost, 12.0);
        // Commodity 1 on `h`, commodity 2 on `e`: C_NE = a(sqrt a + 2) = 16.
        let pne = find_pne(&routing).unwrap();
        let crossed = pne.iter().find(|p| p.choices == vec![1, 0]);
        assert_eq!(crossed.map(|p| p.cost), Some(16.0));
        // Commodity 2 is indifferent between the links when both share `h`,
        // so that profile is an equilibrium too, with cost (1 + sqrt a)(a + sqrt a).
        let shared = pne.iter().find(|p| p.choices == vec![1, 1]);
        assert_eq!(shared.map(|p| p.cost), Some(18.0));
        assert_eq!(result.poa, Poa::Finite(1.5));
    }

    #[test]
    fn single_path_game_has_one_equilibrium() {
        let instance = Instance::builder()
            .nodes(["s", "t"])
            .edge(
                "e",
                "s",
                "t",
                EdgeDelaySpec::shared(PolynomialDelay::affine(&[1.0, 1.0], 0.0).unwrap()),
            )
            .commodity("s", "t", 1.0)
            .commodity("s", "t", 2.0)
            .build()
            .unwrap();
        let routing = Routing::new(instance).unwrap();
        let pne = find_pne(&routing).unwrap();
        assert_eq!(pne.len(), 1);
        assert_eq!(pne[0].choices, vec![0, 0]);
    }

    #[test]
    fn profile_cap_is_enforced() {
        let game = gen_table3();
        assert!(matches!(
            find_pne_with_cap(&game, 7),
            Err(Error::ProfileExplosion { count: 8, cap: 7 })
        ));
    }

    #[test]
    fn best_response_prefers_lowest_index_on_ties() {
        let labels = vec![vec!["a".into(), "b".into(), "c".into()]];
        let game =
            crate::atomic::MatrixGame::new(labels, vec![vec![5.0], vec![1.0], vec![1.0]]).unwrap();
        assert_eq!(best_response(&game, &[0], 0), Some((1, 1.0)));
        assert_eq!(best_response(&game, &[2], 0), None);
    }
}
