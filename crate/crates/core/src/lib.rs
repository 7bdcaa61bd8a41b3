pub mod expon;
pub mod multiset;
pub mod neutral;
pub mod relsem;
pub mod space;
pub mod syntax;
pub mod verify;
