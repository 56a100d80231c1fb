from .graph_core import Graph, canonical_form, enumerate_graphs, graph6_decode, graph6_encode
from .star_forest import StarForest, contains_star_forest, parse_forest
from .free_coloring import EdgeColoring, lemma_free_coloring, verify_free
from .arrowing import ArrowVerdict, Outcome, SearchBudget, arrows
from .ramsey import classify_instance, l_sequence, size_ramsey_exhaustive, witness_graph
from .report_generator import ReportGenerator
from .knowledge_base import TheoremCatalogue

__all__ = ['Graph', 'canonical_form', 'enumerate_graphs', 'graph6_decode', 'graph6_encode',
           'StarForest', 'contains_star_forest', 'parse_forest',
           'EdgeColoring', 'lemma_free_coloring', 'verify_free',
           'ArrowVerdict', 'Outcome', 'SearchBudget', 'arrows',
           'classify_instance', 'l_sequence', 'size_ramsey_exhaustive', 'witness_graph',
           'ReportGenerator', 'TheoremCatalogue']
