mod bdd;
pub mod dfa;
pub mod dfalearn;
pub mod learn;
pub mod ltlf;
pub mod ltlflearn;
pub mod oracle;
pub mod sat;
pub mod words;
