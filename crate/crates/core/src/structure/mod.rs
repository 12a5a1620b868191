mod radical;
mod semisimple;
mod wedderburn;

pub use radical::{radical, Quotient};
pub use semisimple::{semisimple_blocks, simple_blocks, SimpleBlock};
pub use wedderburn::{
    check_block_action, decomposition_failures, radical_is_invariant, wedderburn_malcev, wedderburn_malcev_with_order,
    BlockActionCheck, WedderburnData,
};
