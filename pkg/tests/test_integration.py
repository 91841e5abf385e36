"""End-to-end checks that chain several modules together."""
from qbailey import bailey as bl
from qbailey.configsum import X
from qbailey.fermion import fermionic_X
from qbailey.oracle import PartSpec, hook_partition_gen_fn, partition_count_products
from qbailey.series import equal_to_order


def test_two_step_chain_gives_the_modulus_seven_product():
    pair = bl.iterate_transform(bl.initial_pair(), 2)
    lhs, rhs = bl.bailey_sum_sides(pair, bl.gdinf_pair(0), 40)
    assert equal_to_order(lhs, rhs, 40)
    product = partition_count_products(PartSpec(7, (1, 2, 5, 6)), 40)
    assert equal_to_order(lhs, product, 40)


def test_partitions_paths_and_fermions_agree():
    for L in range(0, 11, 2):
        hooks = hook_partition_gen_fn(3, 5, 1, 2, 2, L)
        assert hooks == X(3, 5, 1, 2, L, 2) == fermionic_X(3, 5, 1, 2, 2, L)
