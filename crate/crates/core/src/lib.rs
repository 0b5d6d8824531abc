pub mod algebra;
pub mod census;
pub mod closedform;
pub mod genfun;
pub mod oracle;
pub mod dual;
pub mod series;
