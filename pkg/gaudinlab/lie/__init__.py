'''
Root systems and Chevalley bases of the finite-type simple Lie algebras.
'''
