#include "anchormine/anchormine.hpp"
int main(){return 0;}
