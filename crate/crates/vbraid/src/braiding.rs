//! Turning abstract Gauss data back into a braid word whose closure
//! realizes it.
//!
//! Crossings are laid out in ascending id order, one block per crossing.
//! Every arc gets its own strand: the strand enters at the top where the
//! arc begins (after wrapping through the closure), is routed next to its
//! partner with virtual crossings, feeds its crossing, and the arcs born at
//! the crossing exits run down to the bottom where the closure returns them
//! to their home positions. Free loops become extra strands that no letter
//! touches.

use thiserror::Error;

use crate::gauss::{EndpointRef, GaussData};
use crate::word::{BraidWord, Generator, Sign};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BraidingError {
    #[error("empty Gauss data describes no closed diagram (no crossings, no loops)")]
    EmptyDiagram,
}

/// Label for a live strand segment at the current braid level: the home arc
/// it carries and whether it is the segment arriving from the top of the
/// braid or the one born at a crossing exit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Segment {
    FromTop(usize),
    Born(usize),
}

/// Constructs a braid word whose closure has the given Gauss data. The
/// degree is the number of arcs plus the number of free loops; each real
/// crossing of the data appears exactly once, with its sign.
pub fn braid_from_gauss(gauss: &GaussData) -> Result<BraidWord, BraidingError> {
    let arc_list: Vec<&(EndpointRef, EndpointRef)> = gauss.arcs().iter().collect();
    let arc_count = arc_list.len();
    let degree = arc_count + gauss.free_loops();
    if degree == 0 {
        return Err(BraidingError::EmptyDiagram);
    }
    if arc_count == 0 {
        return Ok(BraidWord::empty(degree));
    }

    // arc index lookup by endpoint
    let mut entering: std::collections::HashMap<&EndpointRef, usize> =
        std::collections::HashMap::new();
    let mut leaving: std::collections::HashMap<&EndpointRef, usize> =
        std::collections::HashMap::new();
    for (k, (src, dst)) in arc_list.iter().enumerate() {
        leaving.insert(src, k);
        entering.insert(dst, k);
    }

    // positions 1..=arc_count carry arcs, higher positions are free loops
    let mut order: Vec<Segment> = (0..arc_count).map(Segment::FromTop).collect();
    let mut letters: Vec<Generator> = Vec::new();

    let pos_of = |order: &[Segment], seg: Segment| -> usize {
        order
            .iter()
            .position(|&s| s == seg)
            .expect("live segment present")
            + 1
    };

    // bubble the strand at `from` to `to` with virtual crossings
    let route = |order: &mut Vec<Segment>, letters: &mut Vec<Generator>, from: usize, to: usize| {
        if from < to {
            for p in from..to {
                letters.push(Generator::Tau(p));
                order.swap(p - 1, p);
            }
        } else {
            for p in (to..from).rev() {
                letters.push(Generator::Tau(p));
                order.swap(p - 1, p);
            }
        }
    };

    for (id, &sign) in gauss.crossings() {
        let entry1 = entering[&EndpointRef::new(id.clone(), 1)];
        let entry2 = entering[&EndpointRef::new(id.clone(), 2)];
        let exit3 = leaving[&EndpointRef::new(id.clone(), 3)];
        let exit4 = leaving[&EndpointRef::new(id.clone(), 4)];

        // the segments to consume are the ones arriving from the top
        let p1 = pos_of(&order, Segment::FromTop(entry1));
        let p2 = pos_of(&order, Segment::FromTop(entry2));
        // bring the corner-2 strand right next to the corner-1 strand
        if p2 > p1 {
            route(&mut order, &mut letters, p2, p1 + 1);
        } else {
            // pass it across: afterwards corner 1 sits immediately left
            route(&mut order, &mut letters, p2, p1);
        }
        let k = pos_of(&order, Segment::FromTop(entry1));
        debug_assert_eq!(pos_of(&order, Segment::FromTop(entry2)), k + 1);

        letters.push(match sign {
            Sign::Plus => Generator::Sigma(k),
            Sign::Minus => Generator::SigmaInv(k),
        });
        order[k - 1] = Segment::Born(exit3);
        order[k] = Segment::Born(exit4);
    }

    // close up positionally: arc k must end at position k+1
    for target in 0..arc_count {
        let p = pos_of(&order, Segment::Born(target));
        route(&mut order, &mut letters, p, target + 1);
    }
    debug_assert!(order
        .iter()
        .enumerate()
        .all(|(k, &s)| s == Segment::Born(k)));

    Ok(BraidWord::new(degree, letters).expect("indices bounded by degree"))
}
