"""Certified chains: ordinal notations, mod-finite set chains with
checkable certificates, their indicator-function chains, and exact chains
of continuous functions on finite metric spaces."""

from .ordinal import (Ordinal, FundamentalSequence, ZERO, ONE, OMEGA,
                      add, classify, compare, fundamental_sequence,
                      left_subtract, parse_ordinal, format_ordinal)
from .lazyset import (LazySet, ResourceLimitError, ap, diff, empty, inter,
                      pair, parse_set, piece, rows, union, unpair)
from .certs import (OrderCertificate, Report, SplitChain, base_chain,
                    base_cert, compose_certs, default_certificate,
                    default_interval, embed_ordinal, parse_certificate,
                    split_interval, tree_child_certs, tree_interval_cert,
                    tree_node, verify_certificate)
from .baire import (BaireFunction, ChainFamily, EmbeddingFamily,
                    ExplicitFamily, FSigmaWitness, IncomparableError,
                    fsigma_witness, make_baire_function, sample_pairs,
                    verify_chain_monotone)
from .metric import (ContChain, MetricAxiomError, MetricSpace, SeparatedNets,
                     build_chain, build_nets, parse_space, phi, psi,
                     witness_points)

__version__ = "0.1.0"
