"""Existence dispatch, backtracking search and array documents."""
