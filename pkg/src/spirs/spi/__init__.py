from .core import (
    Constraint, MonomializationMeta, SpiInstance, SpiSolution, format_instance, parse_instance,
    spi_check, spi_monomialize, spi_oracle, spi_reduce_degree, spi_validate,
)
from .solver import (
    SolverState, iteration_count, solve, solve_monomial, solve_quotient_saving, solve_rbm,
    solve_remainder_saving,
)
