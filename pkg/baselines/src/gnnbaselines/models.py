"""Baseline node-classification architectures.

Every model shares one skeleton: an input projection, a stack of pre-norm
residual blocks, and a linear head. A block normalizes its input, runs one
graph aggregation, and feeds the result through a two-layer MLP with GELU
activations and dropout before the residual add:

    h <- h + MLP(AGG(LayerNorm(h)))

The architectures differ only in AGG:

    resnet*   identity (graph-agnostic; the sgc/adj variants differ in
              feature preprocessing, not in the network)
    gcn       symmetric-normalized sum over neighbors incl. self-loop
    sage      ego embedding concatenated with the neighbor mean
    gat       8-head additive attention over neighbors and self
    gat_sep   ego concatenated with attention over neighbors only
    gt        8-head scaled dot-product attention over neighbors and self
    gt_sep    ego concatenated with dot-product attention over neighbors

The -sep variants widen the MLP input to twice the hidden size, keeping the
node's own embedding separate from the aggregated neighborhood.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import torch
import torch.nn as nn
import torch.nn.functional as F

ARCHITECTURES = ("resnet", "resnet_sgc", "resnet_adj", "gcn", "sage",
                 "gat", "gat_sep", "gt", "gt_sep")

ATTENTION_LEAKY_SLOPE = 0.2  # GAT scoring nonlinearity, held fixed


@dataclass
class ModelConfig:
    """Training protocol defaults; only num_layers is meant to be tuned."""

    architecture: str
    num_layers: int = 2
    hidden_dim: int = 512
    dropout: float = 0.2
    heads: int = 8
    learning_rate: float = 3e-5
    steps: int = 1000
    sgc_power: int = 2
    weight_decay: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.architecture not in ARCHITECTURES:
            raise ValueError(f"unknown architecture {self.architecture!r}; "
                             f"expected one of {ARCHITECTURES}")
        if not 1 <= self.num_layers <= 5:
            raise ValueError(f"num_layers must be in 1..5, got {self.num_layers}")
        if self.uses_attention and self.hidden_dim % self.heads:
            raise ValueError(f"hidden_dim {self.hidden_dim} not divisible by "
                             f"heads {self.heads}")
        if self.steps < 1:
            raise ValueError("steps must be positive")

    @property
    def uses_attention(self) -> bool:
        return self.architecture in ("gat", "gat_sep", "gt", "gt_sep")


class GraphTensors:
    """Arc arrays (one entry per message direction) plus cached operators.

    The GCN and mean aggregations are fixed linear maps of the graph, so
    they are materialized once as sparse matrices; per-arc gather/scatter
    is kept only for the attention models, whose weights depend on the
    features.
    """

    def __init__(self, edge_src, edge_dst, num_nodes: int):
        self.num_nodes = num_nodes
        self.src = torch.as_tensor(edge_src, dtype=torch.long)
        self.dst = torch.as_tensor(edge_dst, dtype=torch.long)
        loop = torch.arange(num_nodes, dtype=torch.long)
        self.src_with_self = torch.cat([self.src, loop])
        self.dst_with_self = torch.cat([self.dst, loop])
        self._operators: dict = {}

    def arcs(self, include_self: bool):
        if include_self:
            return self.src_with_self, self.dst_with_self
        return self.src, self.dst

    def _sparse(self, values: torch.Tensor, src: torch.Tensor,
                dst: torch.Tensor) -> torch.Tensor:
        with warnings.catch_warnings():
            # CSR support is marked beta; the matmul paths used here are fine
            warnings.simplefilter("ignore", UserWarning)
            coo = torch.sparse_coo_tensor(torch.stack([dst, src]), values,
                                          (self.num_nodes, self.num_nodes))
            return coo.coalesce().to_sparse_csr()

    def gcn_operator(self, dtype: torch.dtype) -> torch.Tensor:
        """Row v sums 1/sqrt(d_u d_v) over arcs u->v incl. self-loops."""
        key = ("gcn", dtype)
        if key not in self._operators:
            src, dst = self.arcs(include_self=True)
            degree = torch.zeros(self.num_nodes, dtype=dtype)
            degree.index_add_(0, dst, torch.ones_like(dst, dtype=dtype))
            norm = degree.rsqrt()
            self._operators[key] = self._sparse(norm[src] * norm[dst], src, dst)
        return self._operators[key]

    def mean_operator(self, dtype: torch.dtype) -> torch.Tensor:
        """Row v averages its in-neighbors; isolated rows stay zero."""
        key = ("mean", dtype)
        if key not in self._operators:
            src, dst = self.arcs(include_self=False)
            degree = torch.zeros(self.num_nodes, dtype=dtype)
            degree.index_add_(0, dst, torch.ones_like(dst, dtype=dtype))
            values = degree.clamp_min(1.0).reciprocal()[dst]
            self._operators[key] = self._sparse(values, src, dst)
        return self._operators[key]


def segment_softmax(scores: torch.Tensor, dst: torch.Tensor,
                    num_nodes: int) -> torch.Tensor:
    """Per-destination softmax of arc scores, shape (arcs, heads)."""
    maxima = scores.new_full((num_nodes, scores.shape[1]), -torch.inf)
    maxima.scatter_reduce_(0, dst.unsqueeze(1).expand_as(scores), scores,
                           reduce="amax", include_self=True)
    # softmax is shift-invariant, so the max may be treated as a constant
    shifted = torch.exp(scores - maxima.detach()[dst])
    denom = scores.new_zeros((num_nodes, scores.shape[1]))
    denom.index_add_(0, dst, shifted)
    return shifted / denom[dst].clamp_min(torch.finfo(scores.dtype).tiny)


class IdentityAggregate(nn.Module):
    width_multiplier = 1

    def forward(self, x, graph):
        return x


class GCNAggregate(nn.Module):
    """Sum over in-arcs and self-loop, scaled by 1/sqrt(d_u d_v)."""

    width_multiplier = 1

    def forward(self, x, graph):
        return graph.gcn_operator(x.dtype) @ x


class NeighborMean(nn.Module):
    width_multiplier = 1

    def forward(self, x, graph):
        return graph.mean_operator(x.dtype) @ x


class GATAggregate(nn.Module):
    """Multi-head additive attention with LeakyReLU scoring."""

    width_multiplier = 1

    def __init__(self, hidden_dim: int, heads: int, include_self: bool):
        super().__init__()
        self.heads = heads
        self.head_dim = hidden_dim // heads
        self.include_self = include_self
        self.proj = nn.Linear(hidden_dim, hidden_dim, bias=False)
        self.attn_src = nn.Parameter(torch.empty(heads, self.head_dim))
        self.attn_dst = nn.Parameter(torch.empty(heads, self.head_dim))
        nn.init.xavier_uniform_(self.attn_src)
        nn.init.xavier_uniform_(self.attn_dst)

    def forward(self, x, graph):
        n = graph.num_nodes
        src, dst = graph.arcs(self.include_self)
        h = self.proj(x).view(n, self.heads, self.head_dim)
        score_src = (h * self.attn_src).sum(-1)
        score_dst = (h * self.attn_dst).sum(-1)
        scores = F.leaky_relu(score_src[src] + score_dst[dst],
                              ATTENTION_LEAKY_SLOPE)
        weights = segment_softmax(scores, dst, n)
        out = h.new_zeros(n, self.heads, self.head_dim)
        out.index_add_(0, dst, h[src] * weights.unsqueeze(-1))
        return out.reshape(n, self.heads * self.head_dim)


class DotAttentionAggregate(nn.Module):
    """Multi-head scaled dot-product attention restricted to arcs."""

    width_multiplier = 1

    def __init__(self, hidden_dim: int, heads: int, include_self: bool):
        super().__init__()
        self.heads = heads
        self.head_dim = hidden_dim // heads
        self.include_self = include_self
        self.query = nn.Linear(hidden_dim, hidden_dim)
        self.key = nn.Linear(hidden_dim, hidden_dim)
        self.value = nn.Linear(hidden_dim, hidden_dim)
        self.out = nn.Linear(hidden_dim, hidden_dim)

    def forward(self, x, graph):
        n = graph.num_nodes
        src, dst = graph.arcs(self.include_self)
        shape = (n, self.heads, self.head_dim)
        q = self.query(x).view(shape)
        k = self.key(x).view(shape)
        v = self.value(x).view(shape)
        scores = (q[dst] * k[src]).sum(-1) / math.sqrt(self.head_dim)
        weights = segment_softmax(scores, dst, n)
        gathered = v.new_zeros(shape)
        gathered.index_add_(0, dst, v[src] * weights.unsqueeze(-1))
        return self.out(gathered.reshape(n, self.heads * self.head_dim))


class EgoConcat(nn.Module):
    """Keep the node's own embedding separate from its neighborhood summary."""

    width_multiplier = 2

    def __init__(self, neighbor_aggregate: nn.Module):
        super().__init__()
        self.neighbor_aggregate = neighbor_aggregate

    def forward(self, x, graph):
        return torch.cat([x, self.neighbor_aggregate(x, graph)], dim=1)


def _make_aggregate(config: ModelConfig) -> nn.Module:
    h, heads = config.hidden_dim, config.heads
    if config.architecture in ("resnet", "resnet_sgc", "resnet_adj"):
        return IdentityAggregate()
    if config.architecture == "gcn":
        return GCNAggregate()
    if config.architecture == "sage":
        return EgoConcat(NeighborMean())
    if config.architecture == "gat":
        return GATAggregate(h, heads, include_self=True)
    if config.architecture == "gat_sep":
        return EgoConcat(GATAggregate(h, heads, include_self=False))
    if config.architecture == "gt":
        return DotAttentionAggregate(h, heads, include_self=True)
    return EgoConcat(DotAttentionAggregate(h, heads, include_self=False))


class ResidualBlock(nn.Module):
    def __init__(self, config: ModelConfig):
        super().__init__()
        hidden = config.hidden_dim
        self.norm = nn.LayerNorm(hidden)
        self.aggregate = _make_aggregate(config)
        self.mlp = nn.Sequential(
            nn.Linear(hidden * self.aggregate.width_multiplier, hidden),
            nn.GELU(),
            nn.Dropout(config.dropout),
            nn.Linear(hidden, hidden),
            nn.Dropout(config.dropout),
        )

    def forward(self, x, graph):
        return x + self.mlp(self.aggregate(self.norm(x), graph))


class NodeClassifier(nn.Module):
    def __init__(self, config: ModelConfig, in_dim: int, num_classes: int):
        super().__init__()
        self.config = config
        self.input = nn.Linear(in_dim, config.hidden_dim)
        self.input_dropout = nn.Dropout(config.dropout)
        self.blocks = nn.ModuleList(
            ResidualBlock(config) for _ in range(config.num_layers))
        self.out_norm = nn.LayerNorm(config.hidden_dim)
        self.head = nn.Linear(config.hidden_dim, num_classes)

    def forward(self, x, graph):
        h = self.input_dropout(self.input(x))
        for block in self.blocks:
            h = block(h, graph)
        return self.head(self.out_norm(h))
