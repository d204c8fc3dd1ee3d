pub mod linalg;
pub mod frobenius;
pub mod triangles;
pub mod toda;
pub mod catcoh;
pub mod certify;
