#![allow(dead_code)]

pub mod corpus;
pub mod fixtures;
pub mod mock_llm;
pub mod server;
