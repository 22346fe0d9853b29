"""Kloosterman orbital integrals on Hermitian matrices over R+R and C."""
