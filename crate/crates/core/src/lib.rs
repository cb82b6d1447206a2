pub mod algebra;
pub mod audit;
pub mod family;
pub mod intersection;
pub mod jets;
