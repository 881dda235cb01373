__version__ = '0.1.0'

from contractionpy.transformations import Transformation, compose, parse_transformation, format_transformation
from contractionpy.families import FamilyId, FamilySet, enumerate_family
from contractionpy.greens import greens_by_invariants, greens_abstract, structure_report
from contractionpy.genrank import closure, rees_closure, generates, factorize, min_rank, explicit_genset
from contractionpy.defaults import ContractionConfig
