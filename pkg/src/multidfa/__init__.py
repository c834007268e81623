"""Learning sets of DFAs from positive and negative strings."""
from .automata import (
    Alphabet,
    Dfa,
    LabeledSample,
    accepts,
    accuracy,
    build_pta,
    difference_witness,
    run,
    union,
)
from .estimators import EvolutionaryDFALearner, RPNISplitting, StandardRPNI
from .evolution import EaConfig, Genome, evolve, transition_clustering
from .io import deserialize, serialize, to_dot
from .merging import SplitResult, rpni_splitting, standard_rpni

__version__ = "0.1.0"
