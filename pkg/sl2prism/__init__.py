'''
sl2prism - regular prism tilings and geodesic ball packings in the hyperboloid model of SL(2,R)~
'''

__version__ = '0.1.0'
