//! CART-style binary trees: a Gini-impurity classification grower and a
//! squared-error regression grower (used by gradient boosting).
//!
//! Determinism: features are scanned in ascending index order, candidate
//! thresholds are midpoints between consecutive distinct sorted values, and
//! ties keep the first-found split, so a tree is a pure function of its
//! inputs.

use serde::{Deserialize, Serialize};

/// One node of a flattened tree; children are indices into the node array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Node {
    /// `x[feature] <= threshold` goes left, otherwise right.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    /// Terminal score: the class-1 fraction for classification trees, the
    /// fitted Newton step for regression trees.
    Leaf { value: f64 },
}

/// A binary decision tree stored as a flat node array rooted at index 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    /// Routes `x` to its leaf and returns the leaf value.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut idx = 0;
        loop {
            match self.nodes[idx] {
                Node::Leaf { value } => return value,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    idx = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    /// Maximum root-to-leaf edge count.
    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], idx: usize) -> usize {
            match nodes[idx] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Candidate feature chooser invoked once per node; returns ascending
/// indices.  Plain trees consider every feature, random forests subsample.
pub(crate) type FeaturePicker<'a> = dyn FnMut(usize) -> Vec<usize> + 'a;

pub(crate) struct ClassificationParams {
    pub max_depth: usize,
    pub min_samples_split: usize,
}

/// Grows a Gini classification tree on the index subset `indices`.
///
/// Splitting stops at purity, `max_depth`, or `min_samples_split`.  The best
/// split minimises weighted Gini impurity; because Gini is concave this is
/// never worse than the parent, and zero-gain splits of impure nodes are
/// allowed (a greedy split can pay off deeper down, as in parity-structured
/// data).
pub(crate) fn grow_classification(
    features: &[Vec<f64>],
    labels: &[u8],
    indices: &[usize],
    params: &ClassificationParams,
    pick_features: &mut FeaturePicker,
) -> Tree {
    let mut nodes = Vec::new();
    let mut idx_buf = indices.to_vec();
    grow_class_node(
        features,
        labels,
        &mut idx_buf,
        0,
        params,
        pick_features,
        &mut nodes,
    );
    Tree { nodes }
}

fn gini(n1: f64, n: f64) -> f64 {
    if n == 0.0 {
        return 0.0;
    }
    let p = n1 / n;
    2.0 * p * (1.0 - p)
}

fn grow_class_node(
    features: &[Vec<f64>],
    labels: &[u8],
    indices: &mut [usize],
    depth: usize,
    params: &ClassificationParams,
    pick_features: &mut FeaturePicker,
    nodes: &mut Vec<Node>,
) -> usize {
    let n = indices.len();
    let n1 = indices.iter().filter(|&&i| labels[i] == 1).count();
    let fraction = n1 as f64 / n as f64;

    let stop = depth >= params.max_depth
        || n < params.min_samples_split
        || n1 == 0
        || n1 == n;
    if !stop {
        if let Some((feature, threshold)) =
            best_class_split(features, labels, indices, pick_features)
        {
            // Partition in place: left block first, preserving relative order
            // via a stable two-pass split for determinism.
            let (mut left, mut right): (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
            for &i in indices.iter() {
                if features[i][feature] <= threshold {
                    left.push(i);
                } else {
                    right.push(i);
                }
            }
            debug_assert!(!left.is_empty() && !right.is_empty());
            let here = nodes.len();
            nodes.push(Node::Leaf { value: 0.0 }); // placeholder
            let left_idx = grow_class_node(
                features,
                labels,
                &mut left,
                depth + 1,
                params,
                pick_features,
                nodes,
            );
            let right_idx = grow_class_node(
                features,
                labels,
                &mut right,
                depth + 1,
                params,
                pick_features,
                nodes,
            );
            nodes[here] = Node::Split {
                feature,
                threshold,
                left: left_idx,
                right: right_idx,
            };
            return here;
        }
    }
    let here = nodes.len();
    nodes.push(Node::Leaf { value: fraction });
    here
}

/// Finds the (feature, midpoint threshold) minimising weighted Gini, or
/// `None` when every candidate feature is constant on the subset.
fn best_class_split(
    features: &[Vec<f64>],
    labels: &[u8],
    indices: &[usize],
    pick_features: &mut FeaturePicker,
) -> Option<(usize, f64)> {
    let dim = features[0].len();
    let n = indices.len();
    let n1_total = indices.iter().filter(|&&i| labels[i] == 1).count() as f64;

    let mut best: Option<(f64, usize, f64)> = None;
    let mut sorted: Vec<(f64, u8)> = Vec::with_capacity(n);
    for feature in pick_features(dim) {
        sorted.clear();
        sorted.extend(
            indices
                .iter()
                .map(|&i| (features[i][feature], labels[i])),
        );
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite features"));

        let mut nl = 0.0;
        let mut nl1 = 0.0;
        for w in 0..n - 1 {
            nl += 1.0;
            nl1 += sorted[w].1 as f64;
            if sorted[w].0 == sorted[w + 1].0 {
                continue;
            }
            let nr = n as f64 - nl;
            let nr1 = n1_total - nl1;
            let weighted = (nl * gini(nl1, nl) + nr * gini(nr1, nr)) / n as f64;
            let improves = match best {
                None => true,
                Some((b, _, _)) => weighted < b,
            };
            if improves {
                let threshold = (sorted[w].0 + sorted[w + 1].0) / 2.0;
                best = Some((weighted, feature, threshold));
            }
        }
    }
    best.map(|(_, f, t)| (f, t))
}

pub(crate) struct RegressionParams {
    pub max_depth: usize,
    pub min_samples_split: usize,
}

/// Bound on the magnitude of a regression leaf's Newton step; guards against
/// near-zero curvature blowing up the ensemble.
const MAX_LEAF_VALUE: f64 = 4.0;

/// Grows a squared-error regression tree on `(gradients, hessians)` — the
/// per-sample first and second derivatives of the boosting loss.  Structure
/// is chosen to maximise the variance-reduction proxy on the gradients;
/// leaves take the Newton step `Σg / Σh`, clamped.
pub(crate) fn grow_regression(
    features: &[Vec<f64>],
    gradients: &[f64],
    hessians: &[f64],
    indices: &[usize],
    params: &RegressionParams,
) -> Tree {
    let mut nodes = Vec::new();
    let mut idx_buf = indices.to_vec();
    grow_reg_node(
        features,
        gradients,
        hessians,
        &mut idx_buf,
        0,
        params,
        &mut nodes,
    );
    Tree { nodes }
}

fn leaf_value(gradients: &[f64], hessians: &[f64], indices: &[usize]) -> f64 {
    let g: f64 = indices.iter().map(|&i| gradients[i]).sum();
    let h: f64 = indices.iter().map(|&i| hessians[i]).sum();
    (g / h.max(1e-12)).clamp(-MAX_LEAF_VALUE, MAX_LEAF_VALUE)
}

fn grow_reg_node(
    features: &[Vec<f64>],
    gradients: &[f64],
    hessians: &[f64],
    indices: &mut [usize],
    depth: usize,
    params: &RegressionParams,
    nodes: &mut Vec<Node>,
) -> usize {
    let n = indices.len();
    let stop = depth >= params.max_depth || n < params.min_samples_split;
    if !stop {
        if let Some((feature, threshold)) = best_reg_split(features, gradients, indices) {
            let (mut left, mut right): (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
            for &i in indices.iter() {
                if features[i][feature] <= threshold {
                    left.push(i);
                } else {
                    right.push(i);
                }
            }
            let here = nodes.len();
            nodes.push(Node::Leaf { value: 0.0 });
            let left_idx = grow_reg_node(
                features, gradients, hessians, &mut left, depth + 1, params, nodes,
            );
            let right_idx = grow_reg_node(
                features, gradients, hessians, &mut right, depth + 1, params, nodes,
            );
            nodes[here] = Node::Split {
                feature,
                threshold,
                left: left_idx,
                right: right_idx,
            };
            return here;
        }
    }
    let here = nodes.len();
    nodes.push(Node::Leaf {
        value: leaf_value(gradients, hessians, indices),
    });
    here
}

/// Best squared-error split: maximises `S_L²/n_L + S_R²/n_R` strictly above
/// the parent's `S²/n` (no zero-gain regression splits — they cannot change
/// any leaf value).
fn best_reg_split(
    features: &[Vec<f64>],
    gradients: &[f64],
    indices: &[usize],
) -> Option<(usize, f64)> {
    let dim = features[0].len();
    let n = indices.len();
    let total: f64 = indices.iter().map(|&i| gradients[i]).sum();
    let parent_proxy = total * total / n as f64;

    let mut best: Option<(f64, usize, f64)> = None;
    let mut sorted: Vec<(f64, f64)> = Vec::with_capacity(n);
    for feature in 0..dim {
        sorted.clear();
        sorted.extend(indices.iter().map(|&i| (features[i][feature], gradients[i])));
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite features"));

        let mut nl = 0.0;
        let mut sum_l = 0.0;
        for w in 0..n - 1 {
            nl += 1.0;
            sum_l += sorted[w].1;
            if sorted[w].0 == sorted[w + 1].0 {
                continue;
            }
            let nr = n as f64 - nl;
            let sum_r = total - sum_l;
            let proxy = sum_l * sum_l / nl + sum_r * sum_r / nr;
            if proxy <= parent_proxy + 1e-12 {
                continue;
            }
            let improves = match best {
                None => true,
                Some((b, _, _)) => proxy > b,
            };
            if improves {
                let threshold = (sorted[w].0 + sorted[w + 1].0) / 2.0;
                best = Some((proxy, feature, threshold));
            }
        }
    }
    best.map(|(_, f, t)| (f, t))
}
