//! Fixtures, random instance families, the core heuristic and simulation
//! campaigns.

pub mod campaign;
pub mod fixtures;
pub mod heuristic;
pub mod random;

pub use campaign::{run_campaign, run_instance, CampaignConfig, CampaignReport, FamilySummary, InstanceResult};
pub use fixtures::gen_fixture;
pub use heuristic::{core_heuristic, HeuristicConfig, HeuristicOutcome, HeuristicReport, HeuristicStats};
pub use random::{gen_random, Family, RngStream};
