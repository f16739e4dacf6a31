//! Worked-example diagrams in the text format, for tests, demos and the CLI.

use crate::diagram::BettiDiagram;

/// `pi~_(0,1,2,4) + pi~_(0,2,3,4)`, a direct sum of two pure pieces.
pub const SPLIT_SUM: &str = "4 8 6 -\n- 6 8 4\n";

/// `(1/5) pi~_(0,1,2,5) + (3/5) pi~_(0,2,3,5) + (1/5) pi~_(0,3,4,5)`: integral,
/// but no multiple prime to 5 is the diagram of a module.
pub const THREE_STEP: &str = "2 3 2 -\n- 3 3 -\n- 2 3 2\n";

/// Five times [`THREE_STEP`].
pub const THREE_STEP_TIMES_FIVE: &str = "10 15 10 -\n- 15 15 -\n- 10 15 10\n";

/// Quotient diagram predicted for [`THREE_STEP_TIMES_FIVE`]:
/// `pi~_(0,1,2,5) + 4 pi~_(0)`.
pub const THREE_STEP_TIMES_FIVE_QUOTIENT: &str = "10 15 10 -\n- - - -\n- - - 1\n";

/// A diagram with linear first syzygies whose North fork stops early.
pub const FORK_EXAMPLE: &str = "12 26 16 -\n- - - 1\n- 5 - 1\n- - 12 17\n";

/// Truncation of [`FORK_EXAMPLE`] at its North fork.
pub const FORK_EXAMPLE_TRUNCATED: &str = "12 26 16 -\n- - - 1\n- - - 1\n";

/// `pi~_(0,2,3,4,5,8) + 2 pi~_(0,2,3,5,6,8) + pi~_(0,3,4,5,6,8) + pi~_(0,3,4,6,7,8)`,
/// whose chain is not separated.
pub const BRANCHING: &str =
    "11 - - - - -\n- 60 128 90 32 -\n- 144 300 128 60 -\n- - - 280 240 69\n";

/// Extended-hypothesis quotient of [`BRANCHING`]:
/// `pi~_(0,2,3,4,5,8) + 2 pi~_(0,2,3,5,6,8) + 6 pi~_(0)`.
pub const BRANCHING_QUOTIENT: &str = "11 - - - - -\n- 60 128 90 32 -\n- - - 32 20 -\n- - - - - 3\n";

/// `pi~_(0,1,3,5) + pi~_(0,2,4,5)`; the criteria say nothing here.
pub const OPEN_D: &str = "11 15 - -\n- 10 10 -\n- - 15 11\n";

/// `pi~_(0,1,2,3,5,6) + pi~_(0,1,3,4,5,6)`; likewise open.
pub const OPEN_D_PRIME: &str = "3 12 15 10 - -\n- - 10 15 12 3\n";

/// `S/(x,y,z^2)` over three variables.
pub const COMPLETE_INTERSECTION: &str = "1 2 1 -\n- 1 2 1\n";

/// `k[x,y]/(x,y^2)`: one third of `pi~_(0,2,3) + pi~_(0,1,3)`.
pub const NO_FILTRATION: &str = "1 1 -\n- 1 1\n";

pub fn parse(text: &str) -> BettiDiagram {
    BettiDiagram::parse_text(text, None).expect("fixture parses")
}

/// Every named fixture, for sweeps.
pub const ALL: &[(&str, &str)] = &[
    ("split_sum", SPLIT_SUM),
    ("three_step", THREE_STEP),
    ("three_step_times_five", THREE_STEP_TIMES_FIVE),
    (
        "three_step_times_five_quotient",
        THREE_STEP_TIMES_FIVE_QUOTIENT,
    ),
    ("fork_example", FORK_EXAMPLE),
    ("fork_example_truncated", FORK_EXAMPLE_TRUNCATED),
    ("branching", BRANCHING),
    ("branching_quotient", BRANCHING_QUOTIENT),
    ("open_d", OPEN_D),
    ("open_d_prime", OPEN_D_PRIME),
    ("complete_intersection", COMPLETE_INTERSECTION),
    ("no_filtration", NO_FILTRATION),
];
