//! Synchronous message-passing simulation of the marking algorithm.
//!
//! Each node is a [`Process`] that knows its own id, tag and neighbor list and
//! nothing else. Processes communicate only through per-node mailboxes. An
//! exchange lets every process read the messages delivered by the previous
//! exchange and emit new ones; delivery happens after all processes have
//! stepped, which is the round barrier. Steps within an exchange run in
//! parallel.
//!
//! One algorithm round maps onto exchanges as follows:
//!
//! | round          | exchanges                                           |
//! |----------------|-----------------------------------------------------|
//! | 1              | broadcast `d + r` to every neighbor                 |
//! | 2              | pick the heaviest sender, send it a mark            |
//! | each refinement| count received marks `x`, broadcast `x + r`; re-pick |
//!
//! After the last exchange each node knows locally whether it was marked.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Topology;
use crate::graph::NodeId;
use crate::tags::{Tags, Weight};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Message {
    Weight(Weight),
    Mark,
}

#[derive(Clone, Copy, Debug)]
struct Envelope {
    from: NodeId,
    msg: Message,
}

/// Message counts per algorithm round.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageTrace {
    pub per_round: Vec<u64>,
    /// Synchronous exchanges executed; `2 + 2m`.
    pub exchanges: usize,
}

impl MessageTrace {
    pub fn total(&self) -> u64 {
        self.per_round.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    BroadcastDegree,
    Choose,
    CountAndBroadcast,
}

#[derive(Debug)]
struct Process {
    id: NodeId,
    tag: f64,
    neighbors: Vec<NodeId>,
    choice: Option<NodeId>,
}

impl Process {
    fn broadcast(&self, base: u64, out: &mut Vec<(NodeId, Message)>) {
        let w = Weight::new(base, self.tag, self.id);
        out.extend(self.neighbors.iter().map(|&u| (u, Message::Weight(w))));
    }

    fn step(&mut self, phase: Phase, inbox: &[Envelope]) -> Vec<(NodeId, Message)> {
        let mut out = Vec::new();
        match phase {
            Phase::BroadcastDegree => self.broadcast(self.neighbors.len() as u64, &mut out),
            Phase::Choose => {
                self.choice = inbox
                    .iter()
                    .filter_map(|e| match e.msg {
                        Message::Weight(w) => {
                            debug_assert_eq!(w.id, e.from);
                            Some(w)
                        }
                        Message::Mark => None,
                    })
                    .max()
                    .map(|w| w.id);
                if let Some(c) = self.choice {
                    out.push((c, Message::Mark));
                }
            }
            Phase::CountAndBroadcast => {
                let x = count_marks(inbox);
                self.broadcast(x, &mut out);
            }
        }
        out
    }
}

fn count_marks(inbox: &[Envelope]) -> u64 {
    inbox.iter().filter(|e| e.msg == Message::Mark).count() as u64
}

struct Network {
    procs: Vec<Process>,
    inboxes: Vec<Vec<Envelope>>,
}

impl Network {
    fn new<T: Topology>(topo: &T, tags: &Tags) -> Self {
        let n = topo.node_count();
        let procs: Vec<Process> = (0..n as NodeId)
            .into_par_iter()
            .map_init(
                || topo.new_scratch(),
                |scratch, v| {
                    let mut neighbors = topo.neighbors_with(v, scratch).to_vec();
                    neighbors.sort_unstable();
                    Process {
                        id: v,
                        tag: tags.get(v),
                        neighbors,
                        choice: None,
                    }
                },
            )
            .collect();
        Self {
            procs,
            inboxes: vec![Vec::new(); n],
        }
    }

    /// Steps every process against its inbox, then delivers. Returns the
    /// number of messages sent.
    fn exchange(&mut self, phase: Phase) -> u64 {
        let outboxes: Vec<Vec<(NodeId, Message)>> = self
            .procs
            .par_iter_mut()
            .zip(self.inboxes.par_iter())
            .map(|(p, inbox)| p.step(phase, inbox))
            .collect();

        for inbox in &mut self.inboxes {
            inbox.clear();
        }
        let mut sent = 0u64;
        for (from, out) in outboxes.into_iter().enumerate() {
            let from = from as NodeId;
            for (to, msg) in out {
                debug_assert!(self.procs[from as usize]
                    .neighbors
                    .binary_search(&to)
                    .is_ok());
                self.inboxes[to as usize].push(Envelope { from, msg });
                sent += 1;
            }
        }
        sent
    }

    fn locally_marked(&self) -> Vec<NodeId> {
        self.inboxes
            .iter()
            .enumerate()
            .filter(|(_, inbox)| count_marks(inbox) > 0)
            .map(|(v, _)| v as NodeId)
            .collect()
    }
}

/// Runs `2 + m` algorithm rounds over `topo`. Returns the nodes that received
/// a mark in the final round, sorted, with the message trace.
pub(crate) fn run<T: Topology>(topo: &T, tags: &Tags, m: usize) -> (Vec<NodeId>, MessageTrace) {
    let mut net = Network::new(topo, tags);
    let mut trace = MessageTrace::default();

    trace.per_round.push(net.exchange(Phase::BroadcastDegree));
    trace.per_round.push(net.exchange(Phase::Choose));
    trace.exchanges = 2;
    for _ in 0..m {
        let sent = net.exchange(Phase::CountAndBroadcast) + net.exchange(Phase::Choose);
        trace.per_round.push(sent);
        trace.exchanges += 2;
    }
    (net.locally_marked(), trace)
}
