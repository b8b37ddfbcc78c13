"""Exact Reidemeister torsion, Seifert-manifold homology and U(1)
Chern-Simons k-exponents."""

from .chain import (BasedChainComplex, HomologyBasis, TorsionValue, betti_numbers,
                    integral_homology, tensor_product, torsion,
                    torsion_choice_independence_check, validate)
from .group import (AbelianGroupDescription, GroupPresentation, abelianization_matrix,
                    dim_H1_real, first_homology, seifert_presentation, torsion_subgroup_order)
from .linalg import (IntegerMatrix, RationalMatrix, SnfResult, determinant, image_basis,
                     kernel_basis, preimage, rank, smith_normal_form)
from .localization import (ExteriorClass, KPoly, a_hat_series, bw_partition_torus,
                           eta_prefactor, exp_class, integrate_top, wedge)
from .partition import ComparisonReport, SeifertData, compare
from .twisted import (GroupRingComplex, GroupRingElement, Representation,
                      conjugate_representation, fox_derivative, presentation_complex, specialize)

__version__ = "0.1.0"
