#!/usr/bin/env python
# coding: utf-8

# # Example 1: Ranks and generating sets
#
# ## About this example
#
# Every family is a FamilySet: a sorted set of transformations of one degree.
# Here we build K_p, look at its corners and compute exact ranks.

# In[1]:


import contractionpy as cp
from contractionpy.families import corner, class_of
from contractionpy.genrank import quotient_q, quotient_w, rees, is_irredundant


# ## The grid K_p
#
# K_3(4) has (n-p+1)^2 = 4 elements, listed in canonical (lexicographic) order.

# In[2]:


k = cp.enumerate_family('k:3', 4)
print(k.literals())


# ## Corners
#
# tau eta = delta, and the image class of eta meets the kernel class of delta in delta.

# In[3]:


eta, delta, tau = corner(4, 2, 'eta'), corner(4, 2, 'delta'), corner(4, 2, 'tau')
print(tau * eta == delta)
k2 = cp.enumerate_family('k:2', 4)
print(class_of(eta, k2, 'R').literals())
print(class_of(delta, k2, 'L').literals())


# ## Factorizations
#
# factorize returns the shortest word, lexicographically least among equals.

# In[4]:


gens = [eta, tau]
word = cp.factorize(delta, gens)
print(word.format(gens))


# ## Exact ranks
#
# min_rank returns a RankCertificate: the generators found, and how many
# candidate subsets one size below were refuted.

# In[5]:


for spec in ['l:2', 'l:3', 'reg-oct', 'reg-orct', 'e-orct']:
    certificate = cp.min_rank(cp.enumerate_family(spec, 5))
    print(spec, certificate.size, [g.literal for g in certificate.generators])


# ## Rees quotients
#
# In the quotient Q_p every product of rank below p is the zero.

# In[6]:


for variant, quotient in [('Q', quotient_q(5, 3)), ('W', quotient_w(5, 3))]:
    gens = cp.explicit_genset(5, 3, variant)
    print(variant, len(gens), cp.generates(gens, quotient, rees(3)), is_irredundant(gens, quotient, rees(3)))
    print('rank', cp.min_rank(quotient).size)
