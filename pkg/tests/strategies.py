from hypothesis import strategies as st

from utils.expr_utils import Complete, DisjointUnion, Join, vertex_count


def _extend(children):
    parts = st.tuples(st.integers(min_value=1, max_value=3), children)
    unions = st.lists(parts, min_size=1, max_size=3).map(lambda p: DisjointUnion(tuple(p)))
    joins = st.builds(Join, children, children)
    return unions | joins


def graph_exprs(max_vertices: int = 30):
    """Random join/union expressions over K_1..K_4 with a bounded vertex count"""
    leaves = st.builds(Complete, st.integers(min_value=1, max_value=4))
    return st.recursive(leaves, _extend, max_leaves=5).filter(
        lambda e: vertex_count(e) <= max_vertices
    )
