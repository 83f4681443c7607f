pub mod box_tower;
pub mod fixtures;
pub mod parabola_tower;
pub mod polygon_tower;

pub use box_tower::BoxTower;
pub use parabola_tower::ParabolaTower;
pub use polygon_tower::PolygonTower;
