use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{FlowAssignment, Routing};

/// A finite game in which each player picks one strategy and pays a delay.
pub trait AtomicGame {
    fn players(&self) -> usize;

    fn strategies(&self, player: usize) -> usize;

    fn strategy_label(&self, player: usize, strategy: usize) -> String;

    /// Delay paid by every player under `choices`.
    fn delays(&self, choices: &[usize]) -> Vec<f64>;

    /// Factor of a player's delay in the social cost.
    fn weight(&self, _player: usize) -> f64 {
        1.0
    }

    /// Delay of `player` after switching alone to `strategy`.
    fn deviation_delay(&self, choices: &[usize], player: usize, strategy: usize) -> f64 {
        let mut alt = choices.to_vec();
        alt[player] = strategy;
        self.delays(&alt)[player]
    }

    fn social_cost(&self, delays: &[f64]) -> f64 {
        delays
            .iter()
            .enumerate()
            .map(|(i, d)| self.weight(i) * d)
            .sum()
    }

    fn strategy_counts(&self) -> Vec<usize> {
        (0..self.players()).map(|i| self.strategies(i)).collect()
    }
}

/// The network game: player `i` is commodity `i` and its strategies are
/// the enumerated paths. Edge flows are `f_j(e) = r_j` when `j` routes
/// through `e`, else 0; the social cost weights delays by demand.
impl AtomicGame for Routing {
    fn players(&self) -> usize {
        self.k()
    }

    fn strategies(&self, player: usize) -> usize {
        self.paths(player).len()
    }

    fn strategy_label(&self, player: usize, strategy: usize) -> String {
        self.path_id(player, strategy)
    }

    fn delays(&self, choices: &[usize]) -> Vec<f64> {
        let k = self.k();
        let instance = self.instance();
        let mut flows = vec![0.0; instance.num_edges() * k];
        for (i, &p) in choices.iter().enumerate() {
            let r = instance.commodity(i).demand();
            for &e in self.paths(i)[p].edges() {
                flows[e * k + i] = r;
            }
        }
        let edges = instance.network().edges();
        choices
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                self.paths(i)[p]
                    .edges()
                    .iter()
                    .map(|&e| edges[e].delay().delay(i).eval(&flows[e * k..(e + 1) * k]))
                    .sum()
            })
            .collect()
    }

    fn weight(&self, player: usize) -> f64 {
        self.instance().commodity(player).demand()
    }
}

/// A game given by an explicit delay table over all pure profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    labels: Vec<Vec<String>>,
    /// Row per profile in lexicographic order, one delay per player.
    table: Vec<Vec<f64>>,
}

impl MatrixGame {
    /// `table` lists each profile's delays, profiles in lexicographic
    /// order of the strategy indices.
    pub fn new(labels: Vec<Vec<String>>, table: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || labels.iter().any(|l| l.is_empty()) {
            return Err(Error::BadParameter("every player needs a strategy".into()));
        }
        let profiles: usize = labels.iter().map(Vec::len).product();
        if table.len() != profiles {
            return Err(Error::DimensionMismatch {
                expected: profiles,
                got: table.len(),
            });
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if row.iter().any(|d| !d.is_finite()) {
                return Err(Error::BadParameter("delays must be finite".into()));
            }
        }
        Ok(Self { labels, table })
    }

    /// Two players; `delays[p][q]` holds the delay pair when player 1
    /// picks `p` and player 2 picks `q`.
    pub fn two_player(
        first: Vec<String>,
        second: Vec<String>,
        delays: Vec<Vec<[f64; 2]>>,
    ) -> Result<Self> {
        let table = delays
            .iter()
            .flat_map(|row| row.iter().map(|pair| pair.to_vec()))
            .collect();
        if delays.len() != first.len() || delays.iter().any(|row| row.len() != second.len()) {
            return Err(Error::DimensionMismatch {
                expected: first.len() * second.len(),
                got: delays.iter().map(Vec::len).sum(),
            });
        }
        Self::new(vec![first, second], table)
    }

    /// Index of the strategy labelled `label` for `player`.
    pub fn strategy_index(&self, player: usize, label: &str) -> Option<usize> {
        self.labels.get(player)?.iter().position(|l| l == label)
    }

    fn row(&self, choices: &[usize]) -> usize {
        choices
            .iter()
            .zip(&self.labels)
            .fold(0, |acc, (&c, l)| acc * l.len() + c)
    }
}

impl AtomicGame for MatrixGame {
    fn players(&self) -> usize {
        self.labels.len()
    }

    fn strategies(&self, player: usize) -> usize {
        self.labels[player].len()
    }

    fn strategy_label(&self, player: usize, strategy: usize) -> String {
        self.labels[player][strategy].clone()
    }

    fn delays(&self, choices: &[usize]) -> Vec<f64> {
        self.table[self.row(choices)].clone()
    }
}

/// A pure strategy profile with its delays and social cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub choices: Vec<usize>,
    pub delays: Vec<f64>,
    pub cost: f64,
}

impl Profile {
    pub fn evaluate<G: AtomicGame + ?Sized>(game: &G, choices: &[usize]) -> Result<Self> {
        if choices.len() != game.players() {
            return Err(Error::InvalidProfile(format!(
                "{} choices for {} players",
                choices.len(),
                game.players()
            )));
        }
        for (i, &c) in choices.iter().enumerate() {
            if c >= game.strategies(i) {
                return Err(Error::InvalidProfile(format!(
                    "player {i} has {} strategies, got index {c}",
                    game.strategies(i)
                )));
            }
        }
        Ok(Self::evaluate_unchecked(game, choices.to_vec()))
    }

    pub(crate) fn evaluate_unchecked<G: AtomicGame + ?Sized>(
        game: &G,
        choices: Vec<usize>,
    ) -> Self {
        let delays = game.delays(&choices);
        let cost = game.social_cost(&delays);
        Self {
            choices,
            delays,
            cost,
        }
    }

    /// Resolves strategy labels such as `"P3"` into a profile.
    pub fn from_labels<G: AtomicGame + ?Sized>(game: &G, labels: &[&str]) -> Result<Self> {
        if labels.len() != game.players() {
            return Err(Error::InvalidProfile(format!(
                "{} choices for {} players",
                labels.len(),
                game.players()
            )));
        }
        let choices = labels
            .iter()
            .enumerate()
            .map(|(i, label)| {
                (0..game.strategies(i))
                    .find(|&s| game.strategy_label(i, s) == *label)
                    .ok_or_else(|| {
                        Error::InvalidProfile(format!("player {i} has no strategy `{label}`"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::evaluate_unchecked(game, choices))
    }

    pub fn labels<G: AtomicGame + ?Sized>(&self, game: &G) -> Vec<String> {
        self.choices
            .iter()
            .enumerate()
            .map(|(i, &c)| game.strategy_label(i, c))
            .collect()
    }

    pub fn view<G: AtomicGame + ?Sized>(&self, game: &G) -> ProfileView {
        ProfileView {
            choices: self.labels(game),
            cost: self.cost,
        }
    }

    /// The induced flow: each commodity's whole demand on its chosen path.
    pub fn flow(&self, routing: &Routing) -> FlowAssignment {
        routing.corner_flow(&self.choices)
    }
}

/// Serialized form of a profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileView {
    pub choices: Vec<String>,
    pub cost: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::generators::{gen_fig4, gen_table3};

    #[test]
    fn network_game_routes_whole_demands() {
        let routing = Routing::new(gen_fig4(10.0).unwrap()).unwrap();
        // Commodity 1 on `h`, commodity 2 on `e`: each pays a * 1.
        let profile = Profile::evaluate(&routing, &[1, 0]).unwrap();
        assert_eq!(profile.delays, vec![10.0, 10.0]);
        assert_eq!(profile.cost, 20.0);
        let flow = profile.flow(&routing);
        assert_eq!(flow.edge_vector(0), &[0.0, 1.0]);
        assert_eq!(flow.edge_vector(1), &[1.0, 0.0]);
    }

    #[test]
    fn matrix_game_reads_its_table() {
        let game = gen_table3();
        let profile = Profile::from_labels(&game, &["P3", "P2"]).unwrap();
        assert_eq!(profile.delays, vec![9.0, 23.0]);
        assert_eq!(profile.cost, 32.0);
        assert_eq!(profile.labels(&game), vec!["P3", "P2"]);
    }

    #[test]
    fn invalid_profiles_are_rejected() {
        let game = gen_table3();
        assert!(matches!(
            Profile::evaluate(&game, &[0]),
            Err(Error::InvalidProfile(_))
        ));
        assert!(matches!(
            Profile::evaluate(&game, &[0, 2]),
            Err(Error::InvalidProfile(_))
        ));
        assert!(Profile::from_labels(&game, &["P1", "P3"]).is_err());
    }

    #[test]
    fn matrix_game_checks_its_shape() {
        let labels = vec![
            vec!["x".to_string()],
            vec!["y".to_string(), "z".to_string()],
        ];
        assert!(MatrixGame::new(labels.clone(), vec![vec![1.0, 2.0]]).is_err());
        assert!(MatrixGame::new(labels, vec![vec![1.0, 2.0], vec![1.0, f64::NAN]]).is_err());
    }

    #[test]
    fn profile_view_serializes_labels_and_cost() {
        let game = gen_table3();
        let view = Profile::from_labels(&game, &["P1", "P4"])
            .unwrap()
            .view(&game);
        let json = serde_json::to_value(view).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"choices": ["P1", "P4"], "cost": 33.0})
        );
    }
}
